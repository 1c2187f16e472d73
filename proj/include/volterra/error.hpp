#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace volterra {

/// The kernel violates the positivity assumption 0 < C <= K(x,t) <= D.
class invalid_kernel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the explicit iteration produces a nonpositive or non-finite
/// right-hand side. `index()` is the offending node.
class solver_error : public std::runtime_error {
 public:
  solver_error(const std::string& what, std::size_t index)
      : std::runtime_error(what + " (node " + std::to_string(index) + ")"), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Adaptive reference quadrature did not reach the requested tolerance.
class integration_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace volterra
