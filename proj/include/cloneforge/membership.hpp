#ifndef CLONEFORGE_MEMBERSHIP_HPP
#define CLONEFORGE_MEMBERSHIP_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cloneforge/fourier.hpp"
#include "cloneforge/table.hpp"

namespace cloneforge {

struct Witness {
  enum class Kind { Tuple, Coefficient, Pair, Pinning, Monotone, ParityMix, Slack };
  Kind kind = Kind::Tuple;
  std::vector<std::size_t> points;  // table indices involved
  std::string pattern;              // 2-pinning template, when relevant
  int position = -1;                // flipped argument (or block) for monotonicity
  double lhs = 0.0;                 // the side that should have been larger
  double rhs = 0.0;
  int arity = 0;                    // arity the points refer to
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;
  explicit operator bool() const { return holds; }

  static Verdict yes() { return {}; }
  static Verdict no(Witness w) { return {false, std::move(w)}; }
};

inline void require_nonnegative(const FunctionTable& f, const char* what) {
  if (f.is_signed()) throw PreconditionError(std::string(what) + " needs a non-negative table");
}

inline Verdict is_sd(const FunctionTable& f, double tol = tolerance()) {
  const std::size_t mask = f.size() - 1;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (std::abs(f[x] - f[x ^ mask]) > tol) {
      return Verdict::no({Witness::Kind::Tuple, {x, x ^ mask}, {}, -1, f[x], f[x ^ mask], f.arity()});
    }
  }
  return Verdict::yes();
}

inline Verdict is_p(const FunctionTable& f, double tol = tolerance()) {
  require_nonnegative(f, "P membership");
  const FunctionTable fh = transform(f);
  for (std::size_t x = 0; x < fh.size(); ++x) {
    if (fh[x] < -tol) return Verdict::no({Witness::Kind::Coefficient, {x}, {}, -1, fh[x], 0.0, f.arity()});
  }
  return Verdict::yes();
}

inline Verdict is_pn(const FunctionTable& f, double tol = tolerance()) {
  require_nonnegative(f, "PN membership");
  const FunctionTable fh = transform(f);
  for (std::size_t x = 0; x < fh.size(); ++x) {
    const bool even = weight(x) % 2 == 0;
    if (even && fh[x] < -tol) return Verdict::no({Witness::Kind::Coefficient, {x}, {}, -1, fh[x], 0.0, f.arity()});
    if (!even && fh[x] > tol) return Verdict::no({Witness::Kind::Coefficient, {x}, {}, -1, 0.0, fh[x], f.arity()});
  }
  return Verdict::yes();
}

inline Verdict is_sdp(const FunctionTable& f, double tol = tolerance()) {
  if (Verdict v = is_sd(f, tol); !v) return v;
  if (Verdict v = is_p(f, tol); !v) return v;
  return is_pn(f, tol);
}

inline Verdict is_lsm(const FunctionTable& f, double tol = tolerance()) {
  for (std::size_t x = 0; x < f.size(); ++x) {
    for (std::size_t y = x + 1; y < f.size(); ++y) {
      const double lhs = f[x | y] * f[x & y];
      const double rhs = f[x] * f[y];
      if (lhs < rhs - tol) return Verdict::no({Witness::Kind::Pair, {x, y}, {}, -1, lhs, rhs, f.arity()});
    }
  }
  return Verdict::yes();
}

// Scans templates with x before y, constants in index order.
inline Verdict all_two_pinnings_lsm(const FunctionTable& f, double tol = tolerance()) {
  const int k = f.arity();
  if (k < 2) return Verdict::yes();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      for (std::size_t c = 0; c < (std::size_t{1} << (k - 2)); ++c) {
        std::string pattern(static_cast<std::size_t>(k), '0');
        pattern[static_cast<std::size_t>(i)] = 'x';
        pattern[static_cast<std::size_t>(j)] = 'y';
        int bitpos = k - 3;
        for (int p = 0; p < k; ++p) {
          if (p == i || p == j) continue;
          pattern[static_cast<std::size_t>(p)] = ((c >> bitpos) & 1U) ? '1' : '0';
          --bitpos;
        }
        const FunctionTable g = two_pinning(f, pattern);
        const double lhs = g[0] * g[3];
        const double rhs = g[1] * g[2];
        if (lhs < rhs - tol) {
          return Verdict::no({Witness::Kind::Pinning, {}, pattern, -1, lhs, rhs, f.arity()});
        }
      }
    }
  }
  return Verdict::yes();
}

inline Verdict topkis_equiv(const FunctionTable& f, double tol = tolerance()) {
  if (!is_permissive(f)) throw PreconditionError("the 2-pinning test is only an equivalence for permissive functions");
  return all_two_pinnings_lsm(f, tol);
}

inline bool is_fictitious(const FunctionTable& f, int position, double tol = tolerance()) {
  const int k = f.arity();
  const std::size_t bit = std::size_t{1} << (k - 1 - position);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (!(x & bit) && std::abs(f[x] - f[x | bit]) > tol) return false;
  }
  return true;
}

inline Verdict is_alpha_monotone(const FunctionTable& f, double alpha, double tol = tolerance()) {
  if (!(alpha >= 0.0)) throw PreconditionError("alpha must be non-negative");
  const int k = f.arity();
  for (int i = 0; i < k; ++i) {
    if (is_fictitious(f, i, tol)) continue;
    const std::size_t bit = std::size_t{1} << (k - 1 - i);
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (x & bit) continue;
      const double lhs = alpha * f[x];
      if (lhs > f[x | bit] + tol) {
        return Verdict::no({Witness::Kind::Monotone, {x}, {}, i, lhs, f[x | bit], f.arity()});
      }
    }
  }
  return Verdict::yes();
}

// Witness positions and points refer to the collapsed function tilde(f).
inline Verdict is_block_alpha_monotone(const FunctionTable& f, double alpha, double tol = tolerance()) {
  return is_alpha_monotone(tilde(f, tol), alpha, tol);
}

// fh vanishes on all odd-weight or on all even-weight positions.
inline Verdict parity_condition(const FunctionTable& fh, double tol = tolerance()) {
  std::optional<std::size_t> even_hit, odd_hit;
  for (std::size_t x = 0; x < fh.size(); ++x) {
    if (std::abs(fh[x]) <= tol) continue;
    auto& slot = (weight(x) % 2 == 0) ? even_hit : odd_hit;
    if (!slot) slot = x;
  }
  if (even_hit && odd_hit) {
    return Verdict::no({Witness::Kind::ParityMix, {*even_hit, *odd_hit}, {}, -1, fh[*even_hit], fh[*odd_hit], fh.arity()});
  }
  return Verdict::yes();
}

struct MatchIneq {
  bool holds = true;
  double slack = 0.0;  // LHS - RHS
  double lhs = 0.0;
  double rhs = 0.0;
};

// fh(0011)fh(1100) + fh(0101)fh(1010) + fh(0110)fh(1001) >= fh(0000)fh(1111).
inline MatchIneq matchineq_check(const FunctionTable& fh, double tol = tolerance()) {
  if (fh.arity() != 4) throw PreconditionError("the match inequality is stated for arity 4");
  const double lhs = fh[0b0011] * fh[0b1100] + fh[0b0101] * fh[0b1010] + fh[0b0110] * fh[0b1001];
  const double rhs = fh[0b0000] * fh[0b1111];
  return {lhs - rhs >= -tol, lhs - rhs, lhs, rhs};
}

struct MembershipReport {
  int arity = 0;
  double alpha = 1.0;
  std::vector<std::pair<std::string, Verdict>> verdicts;

  const Verdict* find(const std::string& name) const {
    for (const auto& [n, v] : verdicts) if (n == name) return &v;
    return nullptr;
  }
};

inline MembershipReport classify(const FunctionTable& f, double alpha = 1.0, double tol = tolerance()) {
  require_nonnegative(f, "classification");
  MembershipReport r{f.arity(), alpha, {}};
  const Verdict sd = is_sd(f, tol);
  const Verdict p = is_p(f, tol);
  const Verdict pn = is_pn(f, tol);
  Verdict sdp = Verdict::yes();
  for (const Verdict* v : {&sd, &p, &pn}) {
    if (!*v) {
      sdp = *v;
      break;
    }
  }
  r.verdicts.emplace_back("SD", sd);
  r.verdicts.emplace_back("P", p);
  r.verdicts.emplace_back("PN", pn);
  r.verdicts.emplace_back("SDP", sdp);
  r.verdicts.emplace_back("LSM", is_lsm(f, tol));
  r.verdicts.emplace_back("LSM-2-pinnings", all_two_pinnings_lsm(f, tol));
  r.verdicts.emplace_back("MON_alpha", is_alpha_monotone(f, alpha, tol));
  r.verdicts.emplace_back("block-MON_alpha", is_block_alpha_monotone(f, alpha, tol));
  const FunctionTable fh = transform(f);
  r.verdicts.emplace_back("parity-condition", parity_condition(fh, tol));
  if (f.arity() == 4 && sdp) {
    const MatchIneq m = matchineq_check(fh, tol);
    r.verdicts.emplace_back("matchineq", m.holds ? Verdict::yes()
                                                 : Verdict::no({Witness::Kind::Slack, {}, {}, -1, m.lhs, m.rhs, 4}));
  }
  return r;
}

}  // namespace cloneforge

#endif
