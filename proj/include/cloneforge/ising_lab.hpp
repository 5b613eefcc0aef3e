#ifndef CLONEFORGE_ISING_LAB_HPP
#define CLONEFORGE_ISING_LAB_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cloneforge/families.hpp"
#include "cloneforge/fourier.hpp"
#include "cloneforge/membership.hpp"
#include "cloneforge/pps.hpp"
#include "cloneforge/table.hpp"

namespace cloneforge {

struct ApproxPlan {
  enum class Variant { AntiferroStretch, FerroStretch, ConstantDirichlet, ForceOddPower, DeltaPin };
  Variant variant = Variant::AntiferroStretch;
  double eps = 0.0;
  double source = 0.0;  // source Ising weight (stretch plans)
  double target = 0.0;  // target weight, or z for Dirichlet plans
  bool trivial = false; // constant-function plan (target weight 1)
  long ell = 0;         // chain length
  long t = 0;           // number of parallel chains
  double c = 0.0;       // scale; underflows to 0 for long plans, see log_c
  double log_c = 0.0;
  long long a = 0;      // e^a * 2^b approximates e^z
  long long b = 0;
  long j = 0;           // exponent (ForceOddPower, DeltaPin)
  double achieved_error = 0.0;
};

inline const char* to_string(ApproxPlan::Variant v) {
  switch (v) {
    case ApproxPlan::Variant::AntiferroStretch: return "AntiferroStretch";
    case ApproxPlan::Variant::FerroStretch: return "FerroStretch";
    case ApproxPlan::Variant::ConstantDirichlet: return "ConstantDirichlet";
    case ApproxPlan::Variant::ForceOddPower: return "ForceOddPower";
    case ApproxPlan::Variant::DeltaPin: return "DeltaPin";
  }
  return "?";
}

inline constexpr long kMaxChainLength = 201;
inline constexpr long kMaxParallel = 1000000;

// ---------------------------------------------------------------------------
// Series and parallel composition of binary Ising edges.

// (x, z) -> sum_w f(x, w) g(w, z)
inline FunctionTable compose_binary(const FunctionTable& f, const FunctionTable& g) {
  if (f.arity() != 2 || g.arity() != 2) throw PreconditionError("series composition needs binary functions");
  PpsFormula phi{2, 1, {Atom{f, {0, 2}}, Atom{g, {2, 1}}}};
  return eval_pps(phi);
}

struct SeriesCheck {
  double lambda_prime = 0.0;
  FunctionTable composed;  // two lambda' edges in series, scaled by 1/(1+lambda'^2)
  double error = 0.0;      // distance to hIsing(2, lambda)
};

inline SeriesCheck antiferro_to_ferro_series(double lambda, double tol = tolerance()) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("series identity needs 0 < lambda < 1");
  const double lp = lambda / (1.0 - std::sqrt(1.0 - lambda * lambda));
  const FunctionTable edge = hising(2, lp);
  FunctionTable composed = scale(compose_binary(edge, edge), 1.0 / (1.0 + lp * lp));
  const double err = linf_distance(composed, hising(2, lambda));
  if (err > tol) {
    std::ostringstream msg;
    msg << "series identity off by " << err << " at lambda = " << lambda;
    throw VerificationError(msg.str());
  }
  return {lp, std::move(composed), err};
}

// Diagonal and off-diagonal values of ell edges sqrt(y)*[1, 1/y, 1] in series.
inline std::pair<double, double> chain_values(double y, long ell) {
  if (!(y > 0.0)) throw PreconditionError("chain values need y > 0");
  if (ell < 1) throw PreconditionError("chain length must be positive");
  const double s = std::pow(y, -0.5 * static_cast<double>(ell));
  const double p = std::pow(y + 1.0, static_cast<double>(ell));
  const double q = std::pow(y - 1.0, static_cast<double>(ell));
  return {0.5 * s * (p + q), 0.5 * s * (p - q)};
}

inline std::pair<double, double> chain_values_recurrence(double y, long ell) {
  if (!(y > 0.0)) throw PreconditionError("chain values need y > 0");
  if (ell < 1) throw PreconditionError("chain length must be positive");
  const double up = std::sqrt(y);
  const double down = 1.0 / up;
  double m = up, b = down;
  for (long i = 2; i <= ell; ++i) {
    const double nm = up * m + down * b;
    const double nb = down * m + up * b;
    m = nm;
    b = nb;
  }
  return {m, b};
}

// ell copies of sqrt(1/lambda) * hIsing(2, lambda) in series, as a table.
inline FunctionTable series_chain(double lambda, long ell) {
  if (!(lambda > 0.0)) throw PreconditionError("chain needs lambda > 0");
  if (ell < 1) throw PreconditionError("chain length must be positive");
  const FunctionTable edge = scale(hising(2, lambda), std::sqrt(1.0 / lambda));
  FunctionTable acc = edge;
  for (long i = 1; i < ell; ++i) acc = compose_binary(acc, edge);
  return acc;
}

// Realized values c*m^t (diagonal) and c*b^t (off-diagonal), in log space.
inline std::pair<double, double> stretch_realized(const ApproxPlan& p) {
  if (p.trivial) return {1.0, 1.0};
  const auto [m, b] = chain_values(1.0 / p.source, p.ell);
  const double td = static_cast<double>(p.t);
  return {std::exp(p.log_c + td * std::log(m)), std::exp(p.log_c + td * std::log(b))};
}

inline ApproxPlan trivial_stretch(ApproxPlan::Variant v, double src, double eps) {
  ApproxPlan p;
  p.variant = v;
  p.eps = eps;
  p.source = src;
  p.target = 1.0;
  p.trivial = true;
  p.c = 1.0;
  return p;
}

inline ApproxPlan stretch_plan_antiferro(double lambda_src, double lambda_tgt, double eps) {
  if (!(lambda_src > 1.0)) throw PreconditionError("antiferromagnetic source needs lambda > 1");
  if (!(lambda_tgt >= 1.0)) throw PreconditionError("antiferromagnetic target needs lambda >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0,1)");
  if (lambda_tgt == 1.0) return trivial_stretch(ApproxPlan::Variant::AntiferroStretch, lambda_src, eps);
  const double y = 1.0 / lambda_src;
  const double r = (1.0 + y) / (1.0 - y);
  long ell = 1;
  while (!(std::pow(r, static_cast<double>(ell)) > 1.0 + 2.0 * lambda_tgt / eps)) {
    ell += 2;
    if (ell > kMaxChainLength) throw PreconditionError("eps too small: chain length cap exceeded");
  }
  const double ratio = 1.0 + 2.0 / (std::pow(r, static_cast<double>(ell)) - 1.0);  // b/m
  const double lr = std::log(ratio);
  long t = std::max(1L, static_cast<long>(std::floor(std::log(lambda_tgt) / lr)));
  while (t > 1 && !(std::exp((t - 1) * lr) <= lambda_tgt)) --t;
  while (!(std::exp(t * lr) > lambda_tgt)) ++t;
  if (t > kMaxParallel) throw PreconditionError("eps too small: parallel count cap exceeded");
  ApproxPlan p;
  p.variant = ApproxPlan::Variant::AntiferroStretch;
  p.eps = eps;
  p.source = lambda_src;
  p.target = lambda_tgt;
  p.ell = ell;
  p.t = t;
  const auto [m, b] = chain_values(y, ell);
  p.log_c = -static_cast<double>(t) * std::log(m);
  p.c = std::exp(p.log_c);
  const auto [diag, off] = stretch_realized(p);
  p.achieved_error = std::max(std::abs(diag - 1.0), std::abs(off - lambda_tgt));
  if (!(off > lambda_tgt && p.achieved_error < eps)) {
    throw VerificationError("antiferromagnetic stretch plan missed its tolerance");
  }
  return p;
}

inline ApproxPlan stretch_plan_ferro(double lambda_src, double lambda_tgt, double eps) {
  if (!(lambda_src > 0.0 && lambda_src < 1.0)) throw PreconditionError("ferromagnetic source needs 0 < lambda < 1");
  if (!(lambda_tgt > 0.0 && lambda_tgt <= 1.0)) throw PreconditionError("ferromagnetic target needs 0 < lambda <= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0,1)");
  if (lambda_tgt == 1.0) return trivial_stretch(ApproxPlan::Variant::FerroStretch, lambda_src, eps);
  const double y = 1.0 / lambda_src;
  const double r = (y + 1.0) / (y - 1.0);
  long ell = 1;
  while (!(std::pow(r, static_cast<double>(ell)) > 1.0 + 2.0 / eps)) {
    ++ell;
    if (ell > kMaxChainLength) throw PreconditionError("eps too small: chain length cap exceeded");
  }
  const double ratio = 1.0 + 2.0 / (std::pow(r, static_cast<double>(ell)) - 1.0);  // m/b
  const double lr = std::log(ratio);
  const double bound = 1.0 / lambda_tgt;
  long t = 1 + static_cast<long>(std::floor(std::log(bound) / lr));
  while (t > 1 && !(std::exp((t - 1) * lr) <= bound)) --t;
  while (std::exp(t * lr) <= bound) ++t;
  if (t > kMaxParallel) throw PreconditionError("eps too small: parallel count cap exceeded");
  ApproxPlan p;
  p.variant = ApproxPlan::Variant::FerroStretch;
  p.eps = eps;
  p.source = lambda_src;
  p.target = lambda_tgt;
  p.ell = ell;
  p.t = t;
  const auto [m, b] = chain_values(y, ell);
  p.log_c = std::log(lambda_tgt) - static_cast<double>(t) * std::log(b);
  p.c = std::exp(p.log_c);
  const auto [diag, off] = stretch_realized(p);
  p.achieved_error = std::max(std::abs(diag - 1.0), std::abs(off - lambda_tgt));
  if (!(diag > 1.0 && p.achieved_error < eps)) {
    throw VerificationError("ferromagnetic stretch plan missed its tolerance");
  }
  return p;
}

// ---------------------------------------------------------------------------
// Constants e^z from e and 2.

inline constexpr long double kLn2 = 0.693147180559945309417232121458176568L;

// Continued-fraction convergents p/q of ln 2 with q <= 1e9.
inline constexpr std::array<std::pair<std::int64_t, std::int64_t>, 28> kLn2Convergents{{
    {0, 1}, {1, 1}, {2, 3}, {7, 10}, {9, 13}, {61, 88}, {192, 277}, {253, 365},
    {445, 642}, {1143, 1649}, {1588, 2291}, {2731, 3940}, {4319, 6231}, {7050, 10171},
    {25469, 36744}, {261740, 377611}, {287209, 414355}, {548949, 791966},
    {836158, 1206321}, {2221265, 3204608}, {3057423, 4410929}, {5278688, 7615537},
    {8336111, 12026466}, {13614799, 19642003}, {49180508, 70952475},
    {111975815, 161546953}, {385107953, 555593334}, {497083768, 717140287},
}};

inline ApproxPlan dirichlet_const(double z, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  if (!std::isfinite(z)) throw PreconditionError("target exponent must be finite");
  for (const auto& [p, q] : kLn2Convergents) {
    const long double g = static_cast<long double>(p) - static_cast<long double>(q) * kLn2;
    if (!(std::abs(g) < delta) || g == 0.0L) continue;
    const long double n = std::floor(static_cast<long double>(z) / std::abs(g));
    if (std::abs(n) * static_cast<long double>(std::max(p, q)) > 9.0e18L) {
      throw PreconditionError("integer coefficients overflow for this target");
    }
    const auto ni = static_cast<std::int64_t>(n);
    ApproxPlan plan;
    plan.variant = ApproxPlan::Variant::ConstantDirichlet;
    plan.eps = delta;
    plan.target = z;
    plan.a = g > 0 ? p * ni : -p * ni;
    plan.b = g > 0 ? -q * ni : q * ni;
    const long double got = static_cast<long double>(plan.a) + static_cast<long double>(plan.b) * kLn2;
    plan.achieved_error = static_cast<double>(std::abs(got - static_cast<long double>(z)));
    if (!(plan.achieved_error < delta)) throw VerificationError("Dirichlet approximation missed its bound");
    return plan;
  }
  throw PreconditionError("delta below the precision of the stored convergents");
}

// ---------------------------------------------------------------------------
// ForceOdd and PARITY constructions.

inline PpsFormula force_odd_from_fo4(int k) {
  if (k < 2 || k > 8 || k % 2 != 0) throw PreconditionError("ForceOdd recursion needs even k in [2, 8]");
  const FunctionTable fo4 = force_odd(4);
  if (k == 4) return PpsFormula{4, 0, {Atom{fo4, {0, 1, 2, 3}}}};
  if (k == 2) return PpsFormula{2, 2, {Atom{fo4, {0, 1, 2, 3}}, Atom{eq2(), {0, 2}}, Atom{eq2(), {0, 3}}}};
  PpsFormula phi{k, 2, {Atom{fo4, {0, 1, 2, k}}}};
  const int y = k, z = k + 1;
  const std::vector<int> pair_args{y, z};
  embed(phi, force_odd_from_fo4(2), pair_args);
  std::vector<int> rest{z};
  for (int i = 3; i < k; ++i) rest.push_back(i);
  embed(phi, force_odd_from_fo4(k - 2), rest);
  return phi;
}

// lambda * sum_y ForceOdd_k(x_1..x_{k-1}, y) hIsing_{2,1/lambda}(y, x_k).
inline PpsFormula parity_from_forceodd(int k, double lambda) {
  if (k < 2 || k > kMaxArity) throw PreconditionError("parity construction needs 2 <= k <= 12");
  if (!(lambda > 0.0)) throw PreconditionError("parity construction needs lambda > 0");
  std::vector<int> args;
  for (int i = 0; i < k - 1; ++i) args.push_back(i);
  args.push_back(k);
  return PpsFormula{k, 1, {Atom{constant(lambda), {}}, Atom{force_odd(k), args}, Atom{hising(2, 1.0 / lambda), {k, k - 1}}}};
}

struct ForceOddApprox {
  ApproxPlan plan;
  double lambda = 0.0;
  double lambda_prime = 2.0;
  FunctionTable f;   // sum over y of four lambda-edges to y and six lambda'-edges
  FunctionTable g;   // f / f(0001)
  FunctionTable gj;  // g^j
};

inline ForceOddApprox force_odd4_approx(double eps, double lambda_prime = 2.0) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0,1)");
  if (!(lambda_prime > 1.0)) throw PreconditionError("lambda' must exceed 1");
  ForceOddApprox out;
  out.lambda_prime = lambda_prime;
  const double l4 = std::pow(lambda_prime, 4.0);
  out.lambda = std::sqrt(l4 + std::sqrt(l4 * l4 - 1.0));
  PpsFormula phi{4, 1, {}};
  const FunctionTable star = hising(2, out.lambda);
  const FunctionTable pairs = hising(2, lambda_prime);
  for (int i = 0; i < 4; ++i) phi.atoms.push_back({star, {i, 4}});
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) phi.atoms.push_back({pairs, {i, j}});
  out.f = eval_pps(phi);
  out.g = scale(out.f, 1.0 / out.f[0b0001]);
  const FunctionTable target = force_odd(4);
  long j = 1;
  for (;; ++j) {
    if (j > 100000) throw PreconditionError("eps too small for the power sequence");
    out.gj = power(out.g, static_cast<double>(j));
    if (linf_distance(out.gj, target) < eps) break;
  }
  out.plan.variant = ApproxPlan::Variant::ForceOddPower;
  out.plan.eps = eps;
  out.plan.j = j;
  out.plan.source = out.lambda;
  out.plan.target = lambda_prime;
  out.plan.achieved_error = linf_distance(out.gj, target);
  return out;
}

// ---------------------------------------------------------------------------
// Self-dual functions as products of parity factors.

struct ParityFactor {
  std::size_t w = 0;  // support mask (even weight)
  double lambda = 1.0;
};

// F(y) = prod_w lambda_w^{(-1)^{wt(w & y)}} over even w, with lambda_w the
// exponential of the transform of log F at w.
inline std::vector<ParityFactor> sd_parity_decompose(const FunctionTable& f, double tol = tolerance()) {
  if (!is_permissive(f)) throw PreconditionError("decomposition needs a permissive function");
  if (Verdict v = is_sd(f, tol); !v) throw PreconditionError("decomposition needs a self-dual function");
  std::vector<double> logs(f.values());
  for (double& v : logs) v = std::log(v);
  const FunctionTable lh = transform(FunctionTable(f.arity(), std::move(logs), Signedness::Signed));
  std::vector<ParityFactor> out;
  for (std::size_t w = 0; w < lh.size(); ++w) {
    if (weight(w) % 2 == 0) out.push_back({w, std::exp(lh[w])});
  }
  return out;
}

// lambda_w * PARITY_{|w|, 1/lambda_w^2} on the coordinates of w, lifted to arity k.
inline FunctionTable parity_factor_table(const ParityFactor& pf, int k) {
  std::vector<int> support;
  for (int i = 0; i < k; ++i) if (bit_at(pf.w, i, k)) support.push_back(i);
  const FunctionTable local = scale(parity_fn(static_cast<int>(support.size()), 1.0 / (pf.lambda * pf.lambda)), pf.lambda);
  return eval_pps(PpsFormula{k, 0, {Atom{local, support}}});
}

inline FunctionTable reconstruct_parity(const std::vector<ParityFactor>& factors, int k) {
  FunctionTable acc = FunctionTable::filled(k, 1.0);
  for (const ParityFactor& pf : factors) acc = product(acc, parity_factor_table(pf, k));
  return acc;
}

inline FunctionTable permissive_lift(const FunctionTable& f, int j, double tol = tolerance()) {
  if (Verdict v = is_sd(f, tol); !v) throw PreconditionError("lift needs a self-dual function");
  if (j < 0) throw PreconditionError("lift index must be non-negative");
  std::vector<double> v(f.values());
  const double add = std::ldexp(1.0, -j);
  for (double& e : v) e += add;
  return FunctionTable(f.arity(), std::move(v), f.signedness());
}

// 2^-(j+1) sum_{y,z} G(x,y,z) hIsing(2,2)(y,z)^j with G = F off the diagonal y = z and 1 on it.
inline FunctionTable permissive_lift_constructive(const FunctionTable& f, int j) {
  require_nonnegative(f, "lift");
  const int k = f.arity();
  if (k + 2 > kMaxArity) throw PreconditionError("arity too large for the constructive lift");
  if (j < 0 || j > 30) throw PreconditionError("lift index out of range");
  std::vector<double> gv(std::size_t{1} << (k + 2));
  for (std::size_t x = 0; x < gv.size(); ++x) {
    const bool differ = ((x >> 1) & 1U) != (x & 1U);
    gv[x] = differ ? f[x >> 2] : 1.0;
  }
  PpsFormula phi{k, 2, {Atom{constant(std::ldexp(1.0, -(j + 1))), {}}}};
  std::vector<int> gargs;
  for (int i = 0; i < k + 2; ++i) gargs.push_back(i);
  phi.atoms.push_back({FunctionTable(k + 2, std::move(gv)), gargs});
  for (int i = 0; i < j; ++i) phi.atoms.push_back({hising(2, 2.0), {k, k + 1}});
  return eval_pps(phi);
}

// ---------------------------------------------------------------------------
// Pinning to a delta function.

struct DeltaPin {
  int b = 0;                         // h_n tends to delta_b
  FunctionTable base;                // unary u with u(0) != u(1)
  FunctionTable h;                   // (u / u(b))^n
  std::optional<std::size_t> split;  // tuple a used when the diagonal is constant
  std::optional<FunctionTable> g;    // binary collapse along a
};

inline DeltaPin delta_pin(const FunctionTable& f, long n, double tol = tolerance()) {
  require_nonnegative(f, "delta pinning");
  if (f.arity() < 1) throw PreconditionError("delta pinning needs arity >= 1");
  if (n < 0) throw PreconditionError("power must be non-negative");
  DeltaPin out;
  const double d0 = f[0], d1 = f[f.size() - 1];
  if (std::abs(d0 - d1) > tol) {
    out.base = FunctionTable(1, {d0, d1});
  } else {
    const std::size_t mask = f.size() - 1;
    std::optional<std::size_t> a;
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (std::abs(f[x] - f[x ^ mask]) > tol) {
        a = x;
        break;
      }
    }
    if (!a) throw PreconditionError("function is self-dual: no pinning witness exists");
    // g(x, z): zeros of a carry x, ones of a carry z.
    std::vector<double> gv(4);
    for (std::size_t r = 0; r < 4; ++r) {
      const std::size_t xs = (r & 2) ? mask : 0;
      const std::size_t zs = (r & 1) ? mask : 0;
      gv[r] = f[(xs & ~*a & mask) | (zs & *a)];
    }
    out.split = a;
    out.g = FunctionTable(2, std::move(gv));
    out.base = sum_out_last(*out.g);
  }
  out.b = out.base[1] > out.base[0] ? 1 : 0;
  const double top = out.base[static_cast<std::size_t>(out.b)];
  out.h = FunctionTable(1, {std::pow(out.base[0] / top, static_cast<double>(n)),
                            std::pow(out.base[1] / top, static_cast<double>(n))});
  return out;
}

inline ApproxPlan delta_pin_plan(const FunctionTable& f, double eps, double tol = tolerance()) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0,1)");
  const DeltaPin first = delta_pin(f, 1, tol);
  const FunctionTable target = delta(first.b);
  ApproxPlan p;
  p.variant = ApproxPlan::Variant::DeltaPin;
  p.eps = eps;
  for (long n = 1; n <= 1000000; ++n) {
    const double err = linf_distance(delta_pin(f, n, tol).h, target);
    if (err < eps) {
      p.j = n;
      p.achieved_error = err;
      return p;
    }
  }
  throw PreconditionError("delta pinning converges too slowly");
}

// ---------------------------------------------------------------------------
// Ternary ferromagnetic factorization.

struct PairFactor {
  int i = 0;
  int j = 1;
  double lambda = 0.0;  // hIsing(2, lambda)(x_i, x_j); lambda = 0 is EQ
};

struct Collapse2 {
  enum class Kind { Zero, EqEq, EqIsing, Triangle };
  Kind kind = Kind::Triangle;
  double scale = 1.0;
  double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;  // Triangle case
  std::vector<PairFactor> factors;
};

inline const char* to_string(Collapse2::Kind k) {
  switch (k) {
    case Collapse2::Kind::Zero: return "zero";
    case Collapse2::Kind::EqEq: return "eq-eq";
    case Collapse2::Kind::EqIsing: return "eq-ising";
    case Collapse2::Kind::Triangle: return "triangle";
  }
  return "?";
}

inline FunctionTable realize(const Collapse2& c) {
  PpsFormula phi{3, 0, {Atom{constant(c.scale), {}}}};
  for (const PairFactor& pf : c.factors) phi.atoms.push_back({hising(2, pf.lambda), {pf.i, pf.j}});
  return eval_pps(phi);
}

inline Collapse2 collapse2_factorize(const FunctionTable& f, double tol = tolerance()) {
  if (f.arity() != 3) throw PreconditionError("ternary factorization needs arity 3");
  require_nonnegative(f, "ternary factorization");
  if (Verdict v = is_sdp(f, tol); !v) throw PreconditionError("function is not in SDP");
  const double lam = f[0b000], a = f[0b001], b = f[0b010], c = f[0b100];
  auto check = [&](double lhs, double rhs, const char* name) {
    if (lhs < rhs - tol) {
      std::ostringstream msg;
      msg << "inequality " << name << " fails: " << lhs << " < " << rhs;
      throw PreconditionError(msg.str());
    }
  };
  check(lam * c, a * b, "f(000) f(100) >= f(001) f(010)");
  check(lam * b, a * c, "f(000) f(010) >= f(001) f(100)");
  check(lam * a, b * c, "f(000) f(001) >= f(010) f(100)");
  if (Verdict v = is_lsm(f, tol); !v) throw PreconditionError("function is not log-supermodular");
  Collapse2 out;
  if (lam <= tol) {
    if (a > tol || b > tol || c > tol) throw PreconditionError("f(000) = 0 with a non-zero entry is not in SDP");
    out.kind = Collapse2::Kind::Zero;
    out.scale = 0.0;
  } else {
    if (std::abs(lam - 1.0) > tol) throw PreconditionError("normalize so that f(000) = 1");
    const int nonzero = (a > tol) + (b > tol) + (c > tol);
    if (nonzero == 3) {
      out.kind = Collapse2::Kind::Triangle;
      out.lambda1 = std::sqrt(b * c / a);
      out.lambda2 = std::sqrt(a * c / b);
      out.lambda3 = std::sqrt(a * b / c);
      out.factors = {{0, 1, out.lambda1}, {0, 2, out.lambda2}, {1, 2, out.lambda3}};
    } else if (nonzero == 0) {
      out.kind = Collapse2::Kind::EqEq;
      out.factors = {{0, 1, 0.0}, {1, 2, 0.0}};
    } else if (nonzero == 1) {
      out.kind = Collapse2::Kind::EqIsing;
      if (a > tol) out.factors = {{0, 1, 0.0}, {1, 2, a}};
      else if (b > tol) out.factors = {{0, 2, 0.0}, {0, 1, b}};
      else out.factors = {{1, 2, 0.0}, {0, 1, c}};
    } else {
      throw PreconditionError("two non-zero off-diagonal values violate log-supermodularity");
    }
  }
  const FunctionTable back = realize(out);
  if (linf_distance(back, f) > tol * std::max(1.0, lam)) {
    throw VerificationError("ternary factorization does not reproduce the input");
  }
  return out;
}

}  // namespace cloneforge

#endif
