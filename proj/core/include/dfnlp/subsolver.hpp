#pragma once

// Affine-scaling interior-point subsolvers.
//
// All routines keep every iterate strictly inside the box. Infinite bounds are
// encoded with +-kInfinity.

#include "dfnlp/types.hpp"

namespace dfnlp {

/// min 1/2 (z - c)' H (z - c) + grad' (z - c)   s.t.  A z = b,  lower <= z <= upper
///
/// c is `center` when given, otherwise `start`. `start` must satisfy A start = b
/// and lie strictly inside the finite bounds.
struct QpProblem {
  Matrix H;
  Vector grad;
  Matrix A;
  Vector b;
  Vector lower;
  Vector upper;
  Vector start;
  Vector center;
};

enum class QpStatus { converged, iteration_limit, numerical_failure };

const char* to_string(QpStatus status);

struct QpSolution {
  Vector z;
  Vector y;  // equality duals: H (z - c) + grad ~= A' y on inactive coordinates
  double kkt_residual = 0.0;
  int iterations = 0;
  QpStatus status = QpStatus::converged;
};

struct AffineScalingOptions {
  int max_iter = 100;
  double step_fraction = 0.9;
  double tol = -1.0;            // < 0 selects 1e-8 (1 + ||grad||)
  double scale_cap = 1e3;       // scaling of coordinates with no finite bound
  double regularization = 1e-10;
  double active_distance = 1e-8;  // coordinates closer than this are excluded from duals
};

QpSolution solve_qp(const QpProblem& qp, int max_iter = 100, double step_fraction = 0.9);
QpSolution solve_qp(const QpProblem& qp, const AffineScalingOptions& opts);

/// Minimal-norm correction of x_k onto { x : J (x - x_k) = -g_k }.
/// Throws NumericalError("degenerate Jacobian") when J lacks full row rank.
Vector project_free(const Vector& x_k, const Matrix& J, const Vector& g_k);

struct FeasibilityResult {
  Vector z0;
  double tau = 1.0;
  int iterations = 0;
  QpStatus status = QpStatus::converged;
};

/// Phase-one LP
///
///   min tau  s.t.  J (x - x_k) - g_k tau = -g_k,  lower <= x <= upper,  tau >= 0
///
/// started from the always-feasible [x_k; 1]. The returned z0 satisfies
/// J (z0 - x_k) = -(1 - tau) g_k and stays strictly interior.
FeasibilityResult solve_feasibility_lp(const Matrix& J, const Vector& g_k, const Vector& x_k,
                                       const Vector& lower, const Vector& upper, int max_iter = 50);

}  // namespace dfnlp
