#ifndef CLONEFORGE_FAMILIES_HPP
#define CLONEFORGE_FAMILIES_HPP

#include <vector>

#include "cloneforge/table.hpp"

namespace cloneforge {

inline FunctionTable eq2() { return symmetric({1.0, 0.0, 1.0}); }

// Equality of arbitrary arity (1 on the two constant tuples).
inline FunctionTable eq(int k) {
  if (k < 0 || k > kMaxArity) throw PreconditionError("arity out of range");
  std::vector<double> v(std::size_t{1} << k, 0.0);
  v.front() = 1.0;
  v.back() = 1.0;
  return FunctionTable(k, std::move(v));
}

// 1 on the two constant tuples, lambda elsewhere.
inline FunctionTable hising(int k, double lambda) {
  if (lambda < 0.0) throw PreconditionError("hIsing weight must be non-negative");
  if (k < 0 || k > kMaxArity) throw PreconditionError("arity out of range");
  std::vector<double> v(std::size_t{1} << k, lambda);
  v.front() = 1.0;
  v.back() = 1.0;
  return FunctionTable(k, std::move(v));
}

// 1 on even weight, lambda on odd weight.
inline FunctionTable parity_fn(int k, double lambda) {
  if (lambda < 0.0) throw PreconditionError("parity weight must be non-negative");
  if (k < 0 || k > kMaxArity) throw PreconditionError("arity out of range");
  std::vector<double> v(std::size_t{1} << k);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = (weight(x) % 2 == 0) ? 1.0 : lambda;
  return FunctionTable(k, std::move(v));
}

inline FunctionTable force_odd(int k) {
  if (k < 0 || k > kMaxArity) throw PreconditionError("arity out of range");
  std::vector<double> v(std::size_t{1} << k);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = (weight(x) % 2 == 1) ? 1.0 : 0.0;
  return FunctionTable(k, std::move(v));
}

inline FunctionTable constant(double c) {
  return FunctionTable(0, {c}, c < 0.0 ? Signedness::Signed : Signedness::NonNegative);
}

inline FunctionTable delta(int b) {
  if (b != 0 && b != 1) throw PreconditionError("delta index must be 0 or 1");
  return b == 0 ? FunctionTable(1, {1.0, 0.0}) : FunctionTable(1, {0.0, 1.0});
}

}  // namespace cloneforge

#endif
