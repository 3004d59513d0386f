#ifndef VOI_ERROR_HPP_
#define VOI_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace voi {

// Raised when an argument violates an operation's precondition or a type
// invariant. The CLI maps this to exit code 2.
class invalid_argument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a factorization fails (non positive-definite covariance,
// rank-deficient sample covariance). The CLI maps this to exit code 3.
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string &what,
                           std::size_t leading_minor = 0)
      : std::runtime_error(what), leading_minor_(leading_minor) {}

  // 1-based order of the first leading principal minor that is not
  // positive, or 0 when not applicable.
  std::size_t leading_minor() const noexcept { return leading_minor_; }

private:
  std::size_t leading_minor_;
};

namespace detail {

inline void require(bool condition, const std::string &message) {
  if (!condition) {
    throw invalid_argument(message);
  }
}

} // namespace detail
} // namespace voi

#endif // VOI_ERROR_HPP_
