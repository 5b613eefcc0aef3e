#ifndef CLONEFORGE_TABLE_HPP
#define CLONEFORGE_TABLE_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cloneforge/config.hpp"

namespace cloneforge {

enum class Signedness { NonNegative, Signed };

// Argument positions are 0-based throughout the C++ API. Assignment
// (x_0, ..., x_{k-1}) lives at index sum_i x_i * 2^(k-1-i), so x_0 is the
// most significant bit.
inline int bit_at(std::size_t index, int position, int arity) {
  return static_cast<int>((index >> (arity - 1 - position)) & 1U);
}

inline int weight(std::size_t index) { return std::popcount(index); }

inline std::size_t index_of(std::span<const int> bits) {
  std::size_t idx = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw PreconditionError("assignment entries must be 0 or 1");
    idx = (idx << 1) | static_cast<std::size_t>(b);
  }
  return idx;
}

inline std::vector<int> bits_of(std::size_t index, int arity) {
  std::vector<int> out(static_cast<std::size_t>(arity));
  for (int i = 0; i < arity; ++i) out[static_cast<std::size_t>(i)] = bit_at(index, i, arity);
  return out;
}

inline std::string bit_string(std::size_t index, int arity) {
  std::string s;
  for (int i = 0; i < arity; ++i) s.push_back(bit_at(index, i, arity) ? '1' : '0');
  return s;
}

class FunctionTable {
 public:
  FunctionTable() : values_(1, 0.0) {}

  FunctionTable(int arity, std::vector<double> values,
                Signedness signedness = Signedness::NonNegative)
      : arity_(arity), values_(std::move(values)), signedness_(signedness) {
    if (arity_ < 0 || arity_ > kMaxArity) {
      throw PreconditionError("arity " + std::to_string(arity_) + " outside [0, " +
                              std::to_string(kMaxArity) + "]");
    }
    if (values_.size() != (std::size_t{1} << arity_)) {
      throw PreconditionError("table of arity " + std::to_string(arity_) + " needs " +
                              std::to_string(std::size_t{1} << arity_) + " values, got " +
                              std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw PreconditionError("non-finite value at index " + std::to_string(i));
      }
      if (signedness_ == Signedness::NonNegative && values_[i] < 0.0) {
        std::ostringstream msg;
        msg << "negative entry " << values_[i] << " at " << bit_string(i, arity_)
            << " in a non-negative table";
        throw PreconditionError(msg.str());
      }
    }
  }

  static FunctionTable filled(int arity, double value,
                              Signedness signedness = Signedness::NonNegative) {
    if (arity < 0 || arity > kMaxArity) throw PreconditionError("arity out of range");
    return FunctionTable(arity, std::vector<double>(std::size_t{1} << arity, value), signedness);
  }

  int arity() const { return arity_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t index) const { return values_[index]; }
  Signedness signedness() const { return signedness_; }
  bool is_signed() const { return signedness_ == Signedness::Signed; }

  FunctionTable as_signed() const { return FunctionTable(arity_, values_, Signedness::Signed); }

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  int arity_ = 0;
  std::vector<double> values_;
  Signedness signedness_ = Signedness::NonNegative;
};

inline Signedness join(Signedness a, Signedness b) {
  return (a == Signedness::Signed || b == Signedness::Signed) ? Signedness::Signed
                                                              : Signedness::NonNegative;
}

// Converts to a NonNegative table. Entries in [-tol, 0) are treated as
// rounding noise and set to zero; anything lower is rejected.
inline FunctionTable to_nonnegative(const FunctionTable& f, double tol = tolerance()) {
  std::vector<double> v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < -tol) {
      std::ostringstream msg;
      msg << "entry " << v[i] << " at " << bit_string(i, f.arity()) << " is negative";
      throw PreconditionError(msg.str());
    }
    if (v[i] < 0.0) v[i] = 0.0;
  }
  return FunctionTable(f.arity(), std::move(v), Signedness::NonNegative);
}

struct SymmetricSpec {
  std::vector<double> weights;
  int arity() const { return static_cast<int>(weights.size()) - 1; }
};

inline FunctionTable from_symmetric(const SymmetricSpec& sym) {
  if (sym.weights.empty()) throw PreconditionError("symmetric table needs at least one weight");
  const int k = sym.arity();
  if (k > kMaxArity) throw PreconditionError("arity out of range");
  bool nonneg = std::all_of(sym.weights.begin(), sym.weights.end(),
                            [](double w) { return w >= 0.0; });
  std::vector<double> v(std::size_t{1} << k);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = sym.weights[static_cast<std::size_t>(weight(x))];
  return FunctionTable(k, std::move(v), nonneg ? Signedness::NonNegative : Signedness::Signed);
}

inline FunctionTable symmetric(std::initializer_list<double> weights) {
  return from_symmetric(SymmetricSpec{std::vector<double>(weights)});
}

inline double eval(const FunctionTable& f, std::span<const int> x) {
  if (static_cast<int>(x.size()) != f.arity()) {
    throw PreconditionError("assignment has " + std::to_string(x.size()) +
                            " bits, function has arity " + std::to_string(f.arity()));
  }
  return f[index_of(x)];
}

inline double eval(const FunctionTable& f, std::initializer_list<int> x) {
  return eval(f, std::span<const int>(x.begin(), x.size()));
}

// result(x_0..x_{k-1}) = f(x_{perm[0]}, ..., x_{perm[k-1]}).
inline FunctionTable permute_args(const FunctionTable& f, std::span<const int> perm) {
  const int k = f.arity();
  if (static_cast<int>(perm.size()) != k) throw PreconditionError("permutation length mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (int p : perm) {
    if (p < 0 || p >= k || seen[static_cast<std::size_t>(p)]) {
      throw PreconditionError("argument map is not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<double> v(f.size());
  for (std::size_t r = 0; r < f.size(); ++r) {
    std::size_t s = 0;
    for (int j = 0; j < k; ++j) s = (s << 1) | static_cast<std::size_t>(bit_at(r, perm[static_cast<std::size_t>(j)], k));
    v[r] = f[s];
  }
  return FunctionTable(k, std::move(v), f.signedness());
}

inline FunctionTable permute_args(const FunctionTable& f, std::initializer_list<int> perm) {
  return permute_args(f, std::span<const int>(perm.begin(), perm.size()));
}

inline FunctionTable add_fictitious(const FunctionTable& f) {
  if (f.arity() + 1 > kMaxArity) throw PreconditionError("arity cap exceeded");
  std::vector<double> v(f.size() * 2);
  for (std::size_t x = 0; x < f.size(); ++x) v[2 * x] = v[2 * x + 1] = f[x];
  return FunctionTable(f.arity() + 1, std::move(v), f.signedness());
}

inline FunctionTable sum_out_last(const FunctionTable& f) {
  if (f.arity() == 0) throw PreconditionError("cannot sum out of a nullary function");
  std::vector<double> v(f.size() / 2);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = f[2 * x] + f[2 * x + 1];
  return FunctionTable(f.arity() - 1, std::move(v), f.signedness());
}

inline FunctionTable product(const FunctionTable& f, const FunctionTable& g) {
  if (f.arity() != g.arity()) throw PreconditionError("product needs equal arities");
  std::vector<double> v(f.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = f[x] * g[x];
  return FunctionTable(f.arity(), std::move(v), join(f.signedness(), g.signedness()));
}

inline FunctionTable complement(const FunctionTable& f) {
  std::vector<double> v(f.size());
  const std::size_t mask = f.size() - 1;
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = f[x ^ mask];
  return FunctionTable(f.arity(), std::move(v), f.signedness());
}

inline double linf_distance(const FunctionTable& f, const FunctionTable& g) {
  if (f.arity() != g.arity()) throw PreconditionError("distance needs equal arities");
  double d = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) d = std::max(d, std::abs(f[x] - g[x]));
  return d;
}

inline FunctionTable scale(const FunctionTable& f, double c) {
  if (!f.is_signed() && c < 0.0) throw PreconditionError("negative scale on a non-negative table");
  std::vector<double> v(f.values());
  for (double& e : v) e *= c;
  return FunctionTable(f.arity(), std::move(v), f.signedness());
}

inline bool is_permissive(const FunctionTable& f) {
  return std::all_of(f.values().begin(), f.values().end(), [](double v) { return v > 0.0; });
}

inline bool is_zero(const FunctionTable& f, double tol = tolerance()) {
  return std::all_of(f.values().begin(), f.values().end(),
                     [tol](double v) { return std::abs(v) <= tol; });
}

inline FunctionTable pin(const FunctionTable& f, int position, int b) {
  const int k = f.arity();
  if (position < 0 || position >= k) throw PreconditionError("pin position out of range");
  if (b != 0 && b != 1) throw PreconditionError("pin value must be 0 or 1");
  std::vector<double> v(f.size() / 2);
  const int low = k - 1 - position;
  for (std::size_t r = 0; r < v.size(); ++r) {
    std::size_t hi = (r >> low) << (low + 1);
    std::size_t lo = r & ((std::size_t{1} << low) - 1);
    v[r] = f[hi | (static_cast<std::size_t>(b) << low) | lo];
  }
  return FunctionTable(k - 1, std::move(v), f.signedness());
}

// Template over {'0','1','x','y'}, one character per argument, with exactly
// one 'x' and one 'y'. Result g(x, y) substitutes those into f.
inline FunctionTable two_pinning(const FunctionTable& f, std::string_view pattern) {
  const int k = f.arity();
  if (k < 2) throw PreconditionError("2-pinning needs arity at least 2");
  if (static_cast<int>(pattern.size()) != k) throw PreconditionError("template length mismatch");
  if (std::count(pattern.begin(), pattern.end(), 'x') != 1 ||
      std::count(pattern.begin(), pattern.end(), 'y') != 1) {
    throw PreconditionError("template needs exactly one x and one y");
  }
  std::size_t base = 0, xbit = 0, ybit = 0;
  for (int i = 0; i < k; ++i) {
    const std::size_t bit = std::size_t{1} << (k - 1 - i);
    switch (pattern[static_cast<std::size_t>(i)]) {
      case '0': break;
      case '1': base |= bit; break;
      case 'x': xbit = bit; break;
      case 'y': ybit = bit; break;
      default: throw PreconditionError("template characters must be 0, 1, x or y");
    }
  }
  std::vector<double> v(4);
  for (std::size_t r = 0; r < 4; ++r) {
    v[r] = f[base | ((r & 2) ? xbit : 0) | ((r & 1) ? ybit : 0)];
  }
  return FunctionTable(2, std::move(v), f.signedness());
}

struct ArgPartition {
  int arity = 0;
  std::vector<std::vector<int>> blocks;  // sorted, ordered by least member

  std::vector<int> block_of() const {
    std::vector<int> out(static_cast<std::size_t>(arity), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (int i : blocks[b]) out[static_cast<std::size_t>(i)] = static_cast<int>(b);
    }
    return out;
  }
  friend bool operator==(const ArgPartition&, const ArgPartition&) = default;
};

// i ~ j iff f vanishes (within tol) wherever x_i != x_j. The all-zero
// function merges everything into one block.
inline ArgPartition equiv_relation(const FunctionTable& f, double tol = tolerance()) {
  const int k = f.arity();
  auto related = [&](int i, int j) {
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (bit_at(x, i, k) != bit_at(x, j, k) && std::abs(f[x]) > tol) return false;
    }
    return true;
  };
  ArgPartition p{k, {}};
  std::vector<bool> placed(static_cast<std::size_t>(k), false);
  for (int i = 0; i < k; ++i) {
    if (placed[static_cast<std::size_t>(i)]) continue;
    std::vector<int> block{i};
    placed[static_cast<std::size_t>(i)] = true;
    for (int j = i + 1; j < k; ++j) {
      if (!placed[static_cast<std::size_t>(j)] && related(i, j)) {
        block.push_back(j);
        placed[static_cast<std::size_t>(j)] = true;
      }
    }
    p.blocks.push_back(std::move(block));
  }
  return p;
}

inline FunctionTable tilde(const FunctionTable& f, double tol = tolerance()) {
  const ArgPartition p = equiv_relation(f, tol);
  const int k = f.arity();
  const int l = static_cast<int>(p.blocks.size());
  const std::vector<int> owner = p.block_of();
  std::vector<double> v(std::size_t{1} << l);
  for (std::size_t r = 0; r < v.size(); ++r) {
    std::size_t s = 0;
    for (int i = 0; i < k; ++i) s = (s << 1) | static_cast<std::size_t>(bit_at(r, owner[static_cast<std::size_t>(i)], l));
    v[r] = f[s];
  }
  return FunctionTable(l, std::move(v), f.signedness());
}

// Pointwise power; used by approximation sequences.
inline FunctionTable power(const FunctionTable& f, double exponent) {
  std::vector<double> v(f.values());
  for (double& e : v) e = std::pow(e, exponent);
  return FunctionTable(f.arity(), std::move(v), f.signedness());
}

}  // namespace cloneforge

#endif
