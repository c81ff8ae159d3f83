#pragma once

#include <stdexcept>
#include <string>

namespace nbh {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its admissible range (user-facing validation).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Vector/matrix sizes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDistribution : public Error {
 public:
  using Error::Error;
};

/// x^2 coincides with some omega_ij^2, so H(x) is undefined.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Hyperbolic terms would lose all precision; callers should switch to the
/// regularized Laplacian.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Dense validation tool refused an instance above its size cap.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

class NotSignedGraph : public Error {
 public:
  using Error::Error;
};

/// Average degree too low for c E[tanh^2] = 1 to have a root.
class UndetectableDegree : public Error {
 public:
  using Error::Error;
};

class NoFerromagneticTransition : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what + " (best residual " + std::to_string(best_residual) + ")"),
        best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace nbh
