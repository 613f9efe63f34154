#ifndef BUBBLE_ERRORS_HPP
#define BUBBLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bubble {

/// Argument outside an operation's domain (b < 2, bad branch, pole, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative method hit its cap. Carries the last residual or increment.
class NonConvergence : public std::runtime_error {
public:
  NonConvergence(const std::string &what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

} // namespace bubble

#endif // BUBBLE_ERRORS_HPP
