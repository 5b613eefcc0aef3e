#ifndef CLONEFORGE_CONFIG_HPP
#define CLONEFORGE_CONFIG_HPP

#include <stdexcept>
#include <string>

namespace cloneforge {

inline constexpr int kMaxArity = 12;
inline constexpr double kDefaultTolerance = 1e-9;

namespace detail {
inline double& tolerance_slot() {
  static double tau = kDefaultTolerance;
  return tau;
}
}  // namespace detail

// Absolute tolerance used by every sign and equality test.
inline double tolerance() { return detail::tolerance_slot(); }
inline void set_tolerance(double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  detail::tolerance_slot() = tau;
}

// A caller broke an operation's stated precondition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A construction failed its own post-check; indicates a bug, not bad input.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cloneforge

#endif
