#ifndef CLONEFORGE_FOURIER_HPP
#define CLONEFORGE_FOURIER_HPP

#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "cloneforge/families.hpp"
#include "cloneforge/table.hpp"

namespace cloneforge {

// Normalized Walsh-Hadamard transform: fh(x) = 2^-k sum_w (-1)^{wt(w&x)} f(w).
// Butterfly with the 1/2 factor applied at every level.
inline FunctionTable transform(const FunctionTable& f) {
  std::vector<double> v(f.values());
  const std::size_t n = v.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = 0.5 * (a + b);
        v[j + h] = 0.5 * (a - b);
      }
    }
  }
  return FunctionTable(f.arity(), std::move(v), Signedness::Signed);
}

// Inverse is 2^k times the forward transform. The result stays Signed;
// use to_nonnegative() before treating it as a clone element.
inline FunctionTable inverse_transform(const FunctionTable& g) {
  FunctionTable t = transform(g);
  return scale(t, std::ldexp(1.0, g.arity()));
}

// XOR convolution h(x) = sum_w f(w) g(w ^ x), evaluated directly.
inline FunctionTable convolve(const FunctionTable& fh, const FunctionTable& gh) {
  if (fh.arity() != gh.arity()) throw PreconditionError("convolution needs equal arities");
  std::vector<double> v(fh.size(), 0.0);
  for (std::size_t x = 0; x < v.size(); ++x) {
    double s = 0.0;
    for (std::size_t w = 0; w < v.size(); ++w) s += fh[w] * gh[w ^ x];
    v[x] = s;
  }
  return FunctionTable(fh.arity(), std::move(v), Signedness::Signed);
}

inline double hising_hat(int k, double lambda, std::size_t x) {
  if (k < 0 || k > kMaxArity) throw PreconditionError("arity out of range");
  if (lambda < 0.0) throw PreconditionError("hIsing weight must be non-negative");
  if (x >= (std::size_t{1} << k)) throw PreconditionError("index out of range");
  if (k == 0) return 1.0;
  const double tail = (1.0 - lambda) / std::ldexp(1.0, k - 1);
  if (x == 0) return lambda + tail;
  return weight(x) % 2 == 0 ? tail : 0.0;
}

inline FunctionTable hising_hat_table(int k, double lambda) {
  std::vector<double> v(std::size_t{1} << k);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = hising_hat(k, lambda, x);
  return FunctionTable(k, std::move(v), Signedness::Signed);
}

inline FunctionTable parity_hat(int k, double lambda) {
  if (k < 0 || k > kMaxArity) throw PreconditionError("arity out of range");
  std::vector<double> v(std::size_t{1} << k, 0.0);
  v.front() += 0.5 * (1.0 + lambda);
  v.back() += 0.5 * (1.0 - lambda);
  return FunctionTable(k, std::move(v), Signedness::Signed);
}

// Moves the ones of `a` to the front (stable order) and sums out the rest.
// The result g has arity wt(a) and gh(1..1) = 2^(n - wt(a)) fh(a) < 0.
inline FunctionTable neg_coeff_reduce(const FunctionTable& f, std::size_t a,
                                      double tol = tolerance()) {
  const int n = f.arity();
  if (a >= f.size()) throw PreconditionError("coefficient index out of range");
  if (a == 0) throw PreconditionError("the zero coefficient of a non-negative function is never negative");
  const double coeff = transform(f)[a];
  if (!(coeff < -tol)) {
    std::ostringstream msg;
    msg << "coefficient at " << bit_string(a, n) << " is " << coeff << ", not negative";
    throw PreconditionError(msg.str());
  }
  std::vector<int> order;
  for (int i = 0; i < n; ++i) if (bit_at(a, i, n)) order.push_back(i);
  const int ones = static_cast<int>(order.size());
  for (int i = 0; i < n; ++i) if (!bit_at(a, i, n)) order.push_back(i);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) perm[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = j;
  FunctionTable g = permute_args(f, perm);
  for (int i = ones; i < n; ++i) g = sum_out_last(g);
  return g;
}

// h(x) = sum_y PARITY_{k+n,1/2}(x, y) f(y); hh(1..1) = 2^(n-2) fh(1..1).
inline FunctionTable tech_lift(const FunctionTable& f, int k, double tol = tolerance()) {
  const int n = f.arity();
  if (k < 1 || k + n > kMaxArity) throw PreconditionError("target arity out of range");
  const double top = transform(f)[f.size() - 1];
  if (!(top < -tol)) {
    std::ostringstream msg;
    msg << "top Fourier coefficient is " << top << ", not negative";
    throw PreconditionError(msg.str());
  }
  double even = 0.0, odd = 0.0;
  for (std::size_t y = 0; y < f.size(); ++y) (weight(y) % 2 == 0 ? even : odd) += f[y];
  std::vector<double> v(std::size_t{1} << k);
  for (std::size_t x = 0; x < v.size(); ++x) {
    v[x] = (weight(x) % 2 == 0) ? even + 0.5 * odd : 0.5 * even + odd;
  }
  return FunctionTable(k, std::move(v), f.signedness());
}

struct NandConstruction {
  FunctionTable g;     // [h(0)^-2, h(0)^-1, 0]
  FunctionTable nand;  // g(x,y) h(x) h(y)
};

inline NandConstruction nand_from_witness(const FunctionTable& h, double tol = tolerance()) {
  if (h.arity() != 1) throw PreconditionError("witness must be unary");
  if (std::abs(h[1] - 1.0) > tol) throw PreconditionError("witness must satisfy h(1) = 1");
  const double h0 = h[0];
  if (!(h0 > 0.0 && h0 < 0.5)) throw PreconditionError("witness must satisfy 0 < h(0) < 1/2");
  FunctionTable g = symmetric({1.0 / (h0 * h0), 1.0 / h0, 0.0});
  std::vector<double> v(4);
  for (std::size_t r = 0; r < 4; ++r) v[r] = g[r] * h[r >> 1] * h[r & 1];
  FunctionTable out(2, std::move(v));
  if (linf_distance(out, symmetric({1.0, 1.0, 0.0})) > tol) {
    throw VerificationError("NAND construction did not produce [1,1,0]");
  }
  return {std::move(g), std::move(out)};
}

struct PoweredWitness {
  int j = 0;
  FunctionTable h;  // (h / h(1))^j
};

// Least j with (h(0)/h(1))^j < 1/2; needs 0 < h(0) < h(1).
inline PoweredWitness power_witness(const FunctionTable& h) {
  if (h.arity() != 1) throw PreconditionError("witness must be unary");
  if (!(h[0] > 0.0 && h[0] < h[1])) throw PreconditionError("witness must satisfy 0 < h(0) < h(1)");
  const double r = h[0] / h[1];
  int j = 1;
  while (std::pow(r, j) >= 0.5) ++j;
  return {j, FunctionTable(1, {std::pow(r, j), 1.0})};
}

}  // namespace cloneforge

#endif
