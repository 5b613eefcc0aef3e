#ifndef CLONEFORGE_CIRCUITS_HPP
#define CLONEFORGE_CIRCUITS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cloneforge/families.hpp"
#include "cloneforge/fourier.hpp"
#include "cloneforge/membership.hpp"
#include "cloneforge/table.hpp"

namespace cloneforge {

enum class CircuitKind { Match, Even };

inline const char* to_string(CircuitKind k) { return k == CircuitKind::Match ? "match" : "even"; }

struct Edge {
  int a = 0;
  int b = 0;
  double w = 1.0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Even subgraph enumeration is exponential in the non-terminal edge count.
inline constexpr int kMaxEvenEdges = 24;

class Circuit {
 public:
  Circuit(CircuitKind kind, std::vector<int> externals, std::vector<int> internals, std::vector<Edge> edges)
      : kind_(kind), externals_(std::move(externals)), internals_(std::move(internals)), edges_(std::move(edges)) {
    std::map<int, int> slot;  // id -> internal index, or -1 - terminal index
    for (std::size_t i = 0; i < internals_.size(); ++i) {
      if (!slot.emplace(internals_[i], static_cast<int>(i)).second) {
        throw PreconditionError("duplicate vertex id " + std::to_string(internals_[i]));
      }
    }
    for (std::size_t i = 0; i < externals_.size(); ++i) {
      if (!slot.emplace(externals_[i], -1 - static_cast<int>(i)).second) {
        throw PreconditionError("duplicate vertex id " + std::to_string(externals_[i]));
      }
    }
    if (static_cast<int>(externals_.size()) > kMaxArity) throw PreconditionError("too many terminals");
    terminal_vertex_.assign(externals_.size(), -1);
    for (const Edge& e : edges_) {
      auto ia = slot.find(e.a);
      auto ib = slot.find(e.b);
      if (ia == slot.end() || ib == slot.end()) {
        throw PreconditionError("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") uses an unknown vertex");
      }
      if (e.a == e.b) throw PreconditionError("self-loop at vertex " + std::to_string(e.a));
      if (!std::isfinite(e.w) || !(e.w > 0.0)) {
        throw PreconditionError("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") needs a positive weight");
      }
      const int sa = ia->second, sb = ib->second;
      if (sa < 0 && sb < 0) throw PreconditionError("edge joins two external vertices");
      if (sa < 0 || sb < 0) {
        const int term = -1 - std::min(sa, sb);
        const int inner = std::max(sa, sb);
        if (terminal_vertex_[static_cast<std::size_t>(term)] != -1) {
          throw PreconditionError("external vertex " + std::to_string(externals_[static_cast<std::size_t>(term)]) +
                                  " has degree above 1");
        }
        if (e.w != 1.0) throw PreconditionError("terminal edges must have weight 1");
        terminal_vertex_[static_cast<std::size_t>(term)] = inner;
      } else {
        if (kind_ == CircuitKind::Even && e.w > 1.0) {
          throw PreconditionError("even-circuit weights must lie in (0,1]");
        }
        inner_edges_.push_back({sa, sb, e.w});
      }
    }
    for (std::size_t i = 0; i < externals_.size(); ++i) {
      if (terminal_vertex_[i] == -1) {
        throw PreconditionError("external vertex " + std::to_string(externals_[i]) + " has no terminal edge");
      }
    }
    if (kind_ == CircuitKind::Even && static_cast<int>(inner_edges_.size()) > kMaxEvenEdges) {
      throw PreconditionError("even-circuit has more than " + std::to_string(kMaxEvenEdges) + " internal edges");
    }
  }

  CircuitKind kind() const { return kind_; }
  int arity() const { return static_cast<int>(externals_.size()); }
  const std::vector<int>& externals() const { return externals_; }
  const std::vector<int>& internals() const { return internals_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Internal-vertex slots (indices into internals()) and the edges between them.
  const std::vector<int>& terminal_slots() const { return terminal_vertex_; }
  const std::vector<Edge>& inner_edges() const { return inner_edges_; }

 private:
  CircuitKind kind_;
  std::vector<int> externals_;
  std::vector<int> internals_;
  std::vector<Edge> edges_;
  std::vector<int> terminal_vertex_;
  std::vector<Edge> inner_edges_;  // endpoints are internal slots
};

namespace detail {

inline double matching_sum(const Circuit& c, const std::vector<int>& need) {
  const int n = static_cast<int>(c.internals().size());
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : c.inner_edges()) {
    if (need[static_cast<std::size_t>(e.a)] && need[static_cast<std::size_t>(e.b)]) {
      adj[static_cast<std::size_t>(e.a)].push_back({e.b, e.w});
      adj[static_cast<std::size_t>(e.b)].push_back({e.a, e.w});
    }
  }
  std::vector<char> open(need.begin(), need.end());
  std::function<double(int)> rec = [&](int from) -> double {
    int v = from;
    while (v < n && !open[static_cast<std::size_t>(v)]) ++v;
    if (v == n) return 1.0;
    open[static_cast<std::size_t>(v)] = 0;
    double total = 0.0;
    for (const auto& [u, w] : adj[static_cast<std::size_t>(v)]) {
      if (!open[static_cast<std::size_t>(u)]) continue;
      open[static_cast<std::size_t>(u)] = 0;
      total += w * rec(v + 1);
      open[static_cast<std::size_t>(u)] = 1;
    }
    open[static_cast<std::size_t>(v)] = 1;
    return total;
  };
  return rec(0);
}

inline double even_sum(const Circuit& c, const std::vector<int>& parity) {
  const int n = static_cast<int>(c.internals().size());
  const auto& edges = c.inner_edges();
  const int m = static_cast<int>(edges.size());
  std::vector<int> last(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < m; ++i) {
    last[static_cast<std::size_t>(edges[static_cast<std::size_t>(i)].a)] = i;
    last[static_cast<std::size_t>(edges[static_cast<std::size_t>(i)].b)] = i;
  }
  for (int v = 0; v < n; ++v) {
    if (last[static_cast<std::size_t>(v)] == -1 && parity[static_cast<std::size_t>(v)]) return 0.0;
  }
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::function<double(int)> rec = [&](int i) -> double {
    if (i == m) return 1.0;
    const Edge& e = edges[static_cast<std::size_t>(i)];
    const auto a = static_cast<std::size_t>(e.a);
    const auto b = static_cast<std::size_t>(e.b);
    double total = 0.0;
    for (int take = 0; take < 2; ++take) {
      deg[a] += take;
      deg[b] += take;
      const bool ok_a = last[a] != i || (deg[a] & 1) == parity[a];
      const bool ok_b = last[b] != i || (deg[b] & 1) == parity[b];
      if (ok_a && ok_b) {
        const double sub = rec(i + 1);
        total += take ? e.w * sub : sub;
      }
      deg[a] -= take;
      deg[b] -= take;
    }
    return total;
  };
  return rec(0);
}

}  // namespace detail

// Match: every internal vertex covered exactly once (terminal edges carry y).
// Even: every internal vertex has even spin-1 degree.
inline double eval_circuit(const Circuit& c, std::span<const int> y) {
  if (static_cast<int>(y.size()) != c.arity()) throw PreconditionError("terminal assignment length mismatch");
  const std::size_t n = c.internals().size();
  std::vector<int> hits(n, 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 0 && y[i] != 1) throw PreconditionError("terminal spins must be 0 or 1");
    hits[static_cast<std::size_t>(c.terminal_slots()[i])] += y[i];
  }
  if (c.kind() == CircuitKind::Match) {
    std::vector<int> need(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (hits[v] > 1) return 0.0;
      need[v] = 1 - hits[v];
    }
    return detail::matching_sum(c, need);
  }
  for (int& h : hits) h &= 1;
  return detail::even_sum(c, hits);
}

inline FunctionTable implemented_function(const Circuit& c) {
  std::vector<double> v(std::size_t{1} << c.arity());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = eval_circuit(c, bits_of(x, c.arity()));
  return FunctionTable(c.arity(), std::move(v));
}

// Inverse transform of the implemented function; may have negative entries.
inline FunctionTable realized_values(const Circuit& c) { return inverse_transform(implemented_function(c)); }

// The realized function as a clone element; rejects negative entries.
inline FunctionTable realized_pbf(const Circuit& c, double tol = tolerance()) {
  const FunctionTable r = realized_values(c);
  for (std::size_t x = 0; x < r.size(); ++x) {
    if (r[x] < -tol) {
      std::ostringstream msg;
      msg << "circuit realizes " << r[x] << " at " << bit_string(x, r.arity())
          << "; its implemented function is not the transform of a non-negative function";
      throw PreconditionError(msg.str());
    }
  }
  return to_nonnegative(r, tol);
}

// Incremental construction with fresh vertex ids.
class CircuitBuilder {
 public:
  int add_external() {
    externals_.push_back(next_);
    return next_++;
  }
  int add_internal() {
    internals_.push_back(next_);
    return next_++;
  }
  void connect(int a, int b, double w = 1.0) { edges_.push_back({a, b, w}); }

  // Copies c with relabelled ids; its externals become internal vertices of
  // the builder. Returns the new ids of c's externals, in order.
  std::vector<int> absorb(const Circuit& c) {
    std::map<int, int> rename;
    for (int id : c.internals()) rename[id] = add_internal();
    std::vector<int> ports;
    for (int id : c.externals()) ports.push_back(rename[id] = add_internal());
    for (const Edge& e : c.edges()) connect(rename[e.a], rename[e.b], e.w);
    return ports;
  }

  // Copies c keeping its externals external, except those listed in `drop`,
  // which are removed with their terminal edges.
  void copy(const Circuit& c, const std::set<int>& drop = {}) {
    std::map<int, int> rename;
    for (int id : c.externals()) if (!drop.count(id)) rename[id] = add_external();
    for (int id : c.internals()) rename[id] = add_internal();
    for (const Edge& e : c.edges()) {
      if (drop.count(e.a) || drop.count(e.b)) continue;
      connect(rename[e.a], rename[e.b], e.w);
    }
  }

  Circuit build(CircuitKind kind) const { return Circuit(kind, externals_, internals_, edges_); }

 private:
  int next_ = 0;
  std::vector<int> externals_;
  std::vector<int> internals_;
  std::vector<Edge> edges_;
};

// Path u1-v1-v2-v3-v4-u2 with weights 1, 1/2, 1/2, 1, 1: implements EQ/2.
inline Circuit gadget_eq_match() {
  CircuitBuilder b;
  const int u1 = b.add_external();
  const int u2 = b.add_external();
  const int v1 = b.add_internal(), v2 = b.add_internal(), v3 = b.add_internal(), v4 = b.add_internal();
  b.connect(u1, v1);
  b.connect(v1, v2, 0.5);
  b.connect(v2, v3, 0.5);
  b.connect(v3, v4);
  b.connect(v4, u2);
  return b.build(CircuitKind::Match);
}

// Path u1-v1-w1-w2-v2-u2 with inner weights 1, 1/4, 3/4: implements [3/4, 0, 1/4].
inline Circuit gadget_match_ising_half() {
  CircuitBuilder b;
  const int u1 = b.add_external();
  const int u2 = b.add_external();
  const int v1 = b.add_internal(), w1 = b.add_internal(), w2 = b.add_internal(), v2 = b.add_internal();
  b.connect(u1, v1);
  b.connect(v1, w1);
  b.connect(w1, w2, 0.25);
  b.connect(w2, v2, 0.75);
  b.connect(v2, u2);
  return b.build(CircuitKind::Match);
}

inline Circuit gadget_fictitious(const Circuit& c) {
  CircuitBuilder b;
  b.copy(c);
  const int u = b.add_external();
  const int v = b.add_internal();
  b.connect(u, v);
  if (c.kind() == CircuitKind::Match) b.connect(v, b.add_internal());
  return b.build(c.kind());
}

// Removes the last terminal. Match adds a weight-2 edge so the result is
// 2 fh(x0); Even leaves fh(x0), i.e. half the summed transform.
inline Circuit gadget_sum(const Circuit& c) {
  if (c.arity() == 0) throw PreconditionError("no terminal to sum out");
  CircuitBuilder b;
  b.copy(c, {c.externals().back()});
  if (c.kind() == CircuitKind::Match) b.connect(b.add_internal(), b.add_internal(), 2.0);
  return b.build(c.kind());
}

inline Circuit gadget_product(const Circuit& f, const Circuit& g) {
  if (f.kind() != g.kind()) throw PreconditionError("product of circuits of different kinds");
  if (f.arity() != g.arity()) throw PreconditionError("product of circuits of different arity");
  CircuitBuilder b;
  const int k = f.arity();
  std::vector<int> outer;
  for (int i = 0; i < k; ++i) outer.push_back(b.add_external());
  const std::vector<int> fp = b.absorb(f);
  const std::vector<int> gp = b.absorb(g);
  for (int i = 0; i < k; ++i) {
    const auto s = static_cast<std::size_t>(i);
    const int vi = b.add_internal();
    const int vki = b.add_internal();
    b.connect(outer[s], vi);
    b.connect(vi, vki);
    b.connect(vki, fp[s]);
    b.connect(vki, gp[s]);
    if (f.kind() == CircuitKind::Match) b.connect(fp[s], gp[s]);
  }
  return b.build(f.kind());
}

// Terminal paths u_i-v_i-w_i, triangle on the w's, disjoint edge of weight a.
// Implements a at 000, b at 011, c at 101, d at 110 and zero elsewhere.
// Coefficients within tol below zero are rounding noise and count as zero.
inline Circuit gadget_sdp3(double a, double b_, double c, double d, double tol = tolerance()) {
  if (!(a > 0.0)) throw PreconditionError("gadget needs a > 0");
  if (b_ < -tol || c < -tol || d < -tol) throw PreconditionError("gadget needs b, c, d >= 0");
  CircuitBuilder b;
  int w[3];
  for (int i = 0; i < 3; ++i) {
    const int u = b.add_external();
    const int v = b.add_internal();
    w[i] = b.add_internal();
    b.connect(u, v);
    b.connect(v, w[i]);
  }
  if (d > 0.0) b.connect(w[0], w[1], d / a);
  if (b_ > 0.0) b.connect(w[1], w[2], b_ / a);
  if (c > 0.0) b.connect(w[2], w[0], c / a);
  b.connect(b.add_internal(), b.add_internal(), a);
  return b.build(CircuitKind::Match);
}

struct Sym4Plan {
  enum class Case { Zero, Paths, Finite, NoTop, NoPair };
  Case which = Case::Zero;
  double lambda = 0.0;  // weight on the extra K6 edge (Finite case)
  double mu = 0.0;      // attachment weight
  double scale = 0.0;   // disjoint scaling edge
};

// Solves for the parameters of the four-terminal symmetric gadget.
inline Sym4Plan plan_sym4(double c0, double c2, double c4, double tol = tolerance()) {
  if (!(c0 >= -tol && c2 >= -tol && c4 >= -tol)) throw PreconditionError("coefficients must be non-negative");
  c0 = std::max(c0, 0.0);
  c2 = std::max(c2, 0.0);
  c4 = std::max(c4, 0.0);
  Sym4Plan p;
  if (c0 <= tol) {
    if (c2 > tol || c4 > tol) {
      throw PreconditionError("C0 = 0 forces C2 = C4 = 0 for the transform of a non-negative function");
    }
    p.which = Sym4Plan::Case::Zero;
    return p;
  }
  if (c2 <= tol && c4 <= tol) {
    p.which = Sym4Plan::Case::Paths;
    p.scale = c0;
    return p;
  }
  const double lhs = 3.0 * c2 * c2;
  const double rhs = c0 * c4;
  const double slack_tol = tol * std::max(1.0, std::max(lhs, rhs));
  if (lhs < rhs - slack_tol) {
    std::ostringstream msg;
    msg << "3*C2^2 = " << lhs << " < C0*C4 = " << rhs << ": not realizable";
    throw PreconditionError(msg.str());
  }
  if (c4 <= tol) {
    p.which = Sym4Plan::Case::NoTop;
    p.mu = std::sqrt(6.0 * c2 / c0);
    p.scale = c0 / 12.0;
    return p;
  }
  if (lhs <= rhs + slack_tol) {
    p.which = Sym4Plan::Case::NoPair;
    p.mu = std::sqrt(3.0 * c2 / c0);
    p.scale = c0 / 3.0;
    return p;
  }
  const double t = rhs / (c2 * c2);
  // (3 - t) l^2 + (12 - 4t) l - 4t = 0, positive root (t in (0, 3)).
  const double qa = 3.0 - t, qb = 12.0 - 4.0 * t, qc = -4.0 * t;
  const double disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  const double lambda = (2.0 * -qc) / (qb + disc);  // stable form of (-qb + disc) / (2 qa)
  p.which = Sym4Plan::Case::Finite;
  p.lambda = lambda;
  p.mu = std::sqrt(c2 * (3.0 * lambda + 12.0) / (c0 * (lambda + 2.0)));
  p.scale = c0 / (3.0 * lambda + 12.0);
  return p;
}

// Symmetric 4-ary gadget: C0 at weight 0, C2 at weight 2, C4 at weight 4.
inline Circuit gadget_sym4(double c0, double c2, double c4, double tol = tolerance()) {
  const Sym4Plan p = plan_sym4(c0, c2, c4, tol);
  CircuitBuilder b;
  int w[4];
  for (int i = 0; i < 4; ++i) {
    const int u = b.add_external();
    const int v = b.add_internal();
    w[i] = b.add_internal();
    b.connect(u, v);
    b.connect(v, w[i]);
  }
  if (p.which == Sym4Plan::Case::Zero) {
    const int t0 = b.add_internal(), t1 = b.add_internal(), t2 = b.add_internal();
    b.connect(t0, t1);
    b.connect(t1, t2);
    b.connect(t2, t0);
    return b.build(CircuitKind::Match);
  }
  if (p.which != Sym4Plan::Case::Paths) {
    const int nx = p.which == Sym4Plan::Case::NoPair ? 4 : 6;
    std::vector<int> x;
    for (int i = 0; i < nx; ++i) x.push_back(b.add_internal());
    for (int i = 0; i < 4; ++i) b.connect(w[i], x[static_cast<std::size_t>(i)], p.mu);
    for (int i = 0; i < nx; ++i) {
      for (int j = i + 1; j < nx; ++j) {
        if (i == 4 && j == 5) {
          if (p.which == Sym4Plan::Case::Finite) b.connect(x[4], x[5], p.lambda);
          continue;
        }
        b.connect(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
      }
    }
  }
  b.connect(b.add_internal(), b.add_internal(), p.scale);
  return b.build(CircuitKind::Match);
}

// Three-edge path; the implemented function times (1+lambda)/2 inverse
// transforms to hIsing(2, lambda).
inline Circuit gadget_even_ising(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw PreconditionError("even Ising gadget needs 0 <= lambda < 1");
  CircuitBuilder b;
  const int u1 = b.add_external();
  const int u2 = b.add_external();
  const int v1 = b.add_internal(), v2 = b.add_internal();
  b.connect(u1, v1);
  b.connect(v1, v2, (1.0 - lambda) / (1.0 + lambda));
  b.connect(v2, u2);
  return b.build(CircuitKind::Even);
}

inline Circuit gadget_even_eq() { return gadget_even_ising(0.0); }

inline double even_ising_scale(double lambda) { return 0.5 * (1.0 + lambda); }

struct Interaction {
  int a = 0;  // vertex ids
  int b = 0;
  double lambda = 0.0;
};

struct IsingSystem {
  std::vector<int> variables;
  std::vector<Interaction> interactions;
  std::vector<int> terminal_map;  // terminal i -> variable id
  double constant = 1.0;
};

// constant * sum over spins agreeing with y at the terminals of prod hIsing(2, lambda_e).
inline double eval_ising(const IsingSystem& s, std::span<const int> y) {
  if (y.size() != s.terminal_map.size()) throw PreconditionError("terminal assignment length mismatch");
  std::map<int, int> slot;
  for (std::size_t i = 0; i < s.variables.size(); ++i) slot[s.variables[i]] = static_cast<int>(i);
  const std::size_t n = s.variables.size();
  std::vector<int> fixed(n, -1);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto v = static_cast<std::size_t>(slot.at(s.terminal_map[i]));
    if (fixed[v] != -1 && fixed[v] != y[i]) return 0.0;
    fixed[v] = y[i];
  }
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < n; ++v) if (fixed[v] == -1) free.push_back(v);
  if (free.size() > 24) throw PreconditionError("too many free spins to enumerate");
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (const Interaction& e : s.interactions) {
    ends.emplace_back(static_cast<std::size_t>(slot.at(e.a)), static_cast<std::size_t>(slot.at(e.b)));
  }
  std::vector<int> spin(fixed);
  double z = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
    for (std::size_t i = 0; i < free.size(); ++i) spin[free[i]] = static_cast<int>((mask >> i) & 1U);
    double term = 1.0;
    for (std::size_t e = 0; e < ends.size() && term != 0.0; ++e) {
      if (spin[ends[e].first] != spin[ends[e].second]) term *= s.interactions[e].lambda;
    }
    z += term;
  }
  return s.constant * z;
}

inline IsingSystem even_to_ising(const Circuit& c, double tol = tolerance()) {
  if (c.kind() != CircuitKind::Even) throw PreconditionError("translation to Ising needs an even-circuit");
  IsingSystem s;
  s.variables = c.internals();
  for (const Edge& e : c.inner_edges()) {
    s.interactions.push_back({c.internals()[static_cast<std::size_t>(e.a)], c.internals()[static_cast<std::size_t>(e.b)],
                              (1.0 - e.w) / (1.0 + e.w)});
  }
  for (int slot : c.terminal_slots()) s.terminal_map.push_back(c.internals()[static_cast<std::size_t>(slot)]);
  // High-temperature expansion: prod (1 + w_e) = (1 + w_e) * hIsing factor, and
  // each parity constraint contributes 1/2 while each terminal sum gives 2.
  s.constant = std::ldexp(1.0, c.arity() - static_cast<int>(c.internals().size()));
  for (const Edge& e : c.inner_edges()) s.constant *= 1.0 + e.w;
  const FunctionTable target = realized_values(c);
  for (std::size_t x = 0; x < target.size(); ++x) {
    const double got = eval_ising(s, bits_of(x, c.arity()));
    if (std::abs(got - target[x]) > tol * std::max(1.0, std::abs(target[x]))) {
      std::ostringstream msg;
      msg << "Ising translation disagrees at " << bit_string(x, c.arity()) << ": " << got << " vs " << target[x];
      throw VerificationError(msg.str());
    }
  }
  return s;
}

}  // namespace cloneforge

#endif
