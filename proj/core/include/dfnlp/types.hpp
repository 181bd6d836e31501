#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace dfnlp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Bounds at or beyond this magnitude are treated as absent.
inline constexpr double kInfinity = 1e20;

inline bool is_finite_bound(double b) { return std::abs(b) < kInfinity; }

/// Maps +-inf (and anything past the sentinel) onto +-kInfinity.
inline double normalize_bound(double b) {
  if (b >= kInfinity) return kInfinity;
  if (b <= -kInfinity) return -kInfinity;
  return b;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidProblem : public Error {
 public:
  using Error::Error;
};

/// A user callback produced a NaN/Inf, or a factorization broke down.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, Vector point = {})
      : Error(what), point_(std::move(point)) {}
  const Vector& point() const { return point_; }

 private:
  Vector point_;
};

/// Raised by the evaluation layer when a new bundle would exceed the budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace dfnlp
