#pragma once

#include <stdexcept>
#include <string>

namespace specpart {

/// Invalid model parameters or arguments outside an operation's domain.
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical method failed to reach its tolerance.
/// Carries the best residual achieved when that is meaningful.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg, double residual = -1.0)
      : std::runtime_error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// The projection of the reference vector is too small to define a direction.
class DegenerateProjectionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A caller violated an interface contract (e.g. unsorted input).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace specpart
