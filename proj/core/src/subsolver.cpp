#include "dfnlp/subsolver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace dfnlp {

const char* to_string(QpStatus status) {
  switch (status) {
    case QpStatus::converged:
      return "converged";
    case QpStatus::iteration_limit:
      return "iteration-limit";
    case QpStatus::numerical_failure:
      return "numerical-failure";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double distance_to_bounds(double z, double lo, double hi) {
  double d = kInf;
  if (is_finite_bound(lo)) d = std::min(d, z - lo);
  if (is_finite_bound(hi)) d = std::min(d, hi - z);
  return d;
}

// Orthonormal basis for the null space of M (rows x cols).
Matrix null_space(const Matrix& M) {
  const Eigen::Index cols = M.cols();
  if (M.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::ColPivHouseholderQR<Matrix> qr(M.transpose());
  qr.setThreshold(1e-12);
  const Eigen::Index rank = qr.rank();
  const Matrix Q = qr.householderQ();
  return Q.rightCols(cols - rank);
}

// argmin 1/2 v'Hv + g'v  s.t. ||v|| <= radius, for symmetric positive definite H.
Vector trust_region_step(const Matrix& H, const Vector& g, double radius) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(H);
  if (eig.info() != Eigen::Success) throw NumericalError("eigen-decomposition failed");
  const Vector& lam = eig.eigenvalues();
  const Vector beta = eig.eigenvectors().transpose() * g;
  auto step_norm = [&](double mu) {
    return (beta.array() / (lam.array() + mu)).matrix().norm();
  };
  const double lam_min = lam.minCoeff();
  double mu = 0.0;
  if (!(lam_min > 0.0) || step_norm(0.0) > radius) {
    double lo = std::max(0.0, -lam_min);
    double hi = lo + beta.norm() / radius + 1.0;
    while (step_norm(hi) > radius) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (step_norm(mid) > radius ? lo : hi) = mid;
    }
    mu = hi;
  }
  return -(eig.eigenvectors() * (beta.array() / (lam.array() + mu)).matrix());
}

struct EngineResult {
  Vector z;
  int iterations = 0;
  QpStatus status = QpStatus::iteration_limit;
};

// Primal affine scaling for a convex QP (H may be only positive semidefinite,
// which covers LPs). `stop_early` lets the LP caller end on its own criterion.
EngineResult affine_scaling(const Matrix& H, const Vector& grad, const Vector& center, const Matrix& A,
                            const Vector& lower, const Vector& upper, const Vector& start,
                            const AffineScalingOptions& opts,
                            const std::function<bool(const Vector&)>& stop_early = {}) {
  const Eigen::Index n = start.size();
  const double tol = opts.tol > 0.0 ? opts.tol : 1e-8 * (1.0 + grad.norm());
  EngineResult out{start, 0, QpStatus::iteration_limit};
  Vector& z = out.z;
  Vector D(n);

  for (int it = 0; it < opts.max_iter; ++it) {
    if (stop_early && stop_early(z)) {
      out.status = QpStatus::converged;
      return out;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double dist = distance_to_bounds(z[j], lower[j], upper[j]);
      D[j] = std::isinf(dist) ? opts.scale_cap : dist;
    }
    const Vector r = H * (z - center) + grad;
    const Vector g_s = D.cwiseProduct(r);
    const Matrix Z = null_space(A * D.asDiagonal());
    if (Z.cols() == 0) {
      out.status = QpStatus::converged;
      return out;
    }
    const Vector g_red = Z.transpose() * g_s;
    if ((Z * g_red).lpNorm<Eigen::Infinity>() <= tol) {
      out.status = QpStatus::converged;
      return out;
    }
    Matrix H_red = Z.transpose() * (D.asDiagonal() * H * D.asDiagonal()) * Z;
    H_red = 0.5 * (H_red + H_red.transpose());
    H_red.diagonal().array() += opts.regularization;
    const Vector v = trust_region_step(H_red, g_red, 1.0);
    const Vector d = D.cwiseProduct(Z * v);
    if (!d.allFinite()) {
      out.status = QpStatus::numerical_failure;
      return out;
    }

    double alpha_max = kInf;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (d[j] > 0.0 && is_finite_bound(upper[j])) alpha_max = std::min(alpha_max, (upper[j] - z[j]) / d[j]);
      if (d[j] < 0.0 && is_finite_bound(lower[j])) alpha_max = std::min(alpha_max, (lower[j] - z[j]) / d[j]);
    }
    const double alpha = std::min(1.0, opts.step_fraction * alpha_max);
    out.iterations = it + 1;
    if (alpha * d.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + z.lpNorm<Eigen::Infinity>())) {
      out.status = QpStatus::converged;
      return out;
    }
    z += alpha * d;
  }
  if (stop_early && stop_early(z)) out.status = QpStatus::converged;
  return out;
}

}  // namespace

QpSolution solve_qp(const QpProblem& qp, int max_iter, double step_fraction) {
  AffineScalingOptions opts;
  opts.max_iter = max_iter;
  opts.step_fraction = step_fraction;
  return solve_qp(qp, opts);
}

QpSolution solve_qp(const QpProblem& qp, const AffineScalingOptions& opts) {
  const Eigen::Index n = qp.start.size();
  if (qp.H.rows() != n || qp.H.cols() != n || qp.grad.size() != n || qp.lower.size() != n ||
      qp.upper.size() != n || qp.A.cols() != n || qp.A.rows() != qp.b.size()) {
    throw Error("solve_qp: inconsistent problem dimensions");
  }
  const Vector center = qp.center.size() == n ? qp.center : qp.start;

  QpSolution sol;
  EngineResult run;
  try {
    run = affine_scaling(qp.H, qp.grad, center, qp.A, qp.lower, qp.upper, qp.start, opts);
  } catch (const NumericalError&) {
    run = EngineResult{qp.start, 0, QpStatus::numerical_failure};
  }
  sol.z = std::move(run.z);
  sol.iterations = run.iterations;
  sol.status = run.status;

  // Duals from the distance-weighted stationarity least squares on the
  // coordinates that are not (numerically) at a bound.
  const Vector r = qp.H * (sol.z - center) + qp.grad;
  Vector w(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double dist = distance_to_bounds(sol.z[j], qp.lower[j], qp.upper[j]);
    w[j] = dist > opts.active_distance ? std::min(dist, opts.scale_cap) : 0.0;
  }
  if (qp.A.rows() > 0) {
    const Matrix WAt = w.asDiagonal() * qp.A.transpose();
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(WAt);
    sol.y = cod.solve(w.cwiseProduct(r));
  } else {
    sol.y = Vector::Zero(0);
  }
  const Vector remainder = r - qp.A.transpose() * sol.y;
  sol.kkt_residual = w.cwiseMin(1.0).cwiseProduct(remainder).lpNorm<Eigen::Infinity>();
  if (!sol.z.allFinite() || !sol.y.allFinite()) sol.status = QpStatus::numerical_failure;
  return sol;
}

Vector project_free(const Vector& x_k, const Matrix& J, const Vector& g_k) {
  if (J.rows() == 0 || g_k.lpNorm<Eigen::Infinity>() == 0.0) return x_k;
  Eigen::ColPivHouseholderQR<Matrix> qr(J.transpose());
  qr.setThreshold(1e-12);
  if (qr.rank() < J.rows()) throw NumericalError("degenerate Jacobian", x_k);
  const Eigen::LDLT<Matrix> gram(J * J.transpose());
  if (gram.info() != Eigen::Success) throw NumericalError("degenerate Jacobian", x_k);
  return x_k - J.transpose() * gram.solve(g_k);
}

FeasibilityResult solve_feasibility_lp(const Matrix& J, const Vector& g_k, const Vector& x_k,
                                       const Vector& lower, const Vector& upper, int max_iter) {
  const Eigen::Index n = x_k.size();
  FeasibilityResult out;
  if (J.rows() == 0 || g_k.lpNorm<Eigen::Infinity>() == 0.0) {
    out.z0 = x_k;
    out.tau = 0.0;
    return out;
  }
  Matrix A(J.rows(), n + 1);
  A << J, -g_k;
  Vector lo(n + 1), hi(n + 1), start(n + 1), cost = Vector::Zero(n + 1);
  lo << lower, 0.0;
  hi << upper, kInfinity;
  start << x_k, 1.0;
  cost[n] = 1.0;

  AffineScalingOptions opts;
  opts.max_iter = max_iter;
  opts.tol = 1e-12;
  const Matrix zero_h = Matrix::Zero(n + 1, n + 1);
  EngineResult run;
  try {
    run = affine_scaling(zero_h, cost, start, A, lo, hi, start, opts,
                         [n](const Vector& z) { return z[n] <= 1e-10; });
  } catch (const NumericalError&) {
    run = EngineResult{start, 0, QpStatus::numerical_failure};
  }
  out.z0 = run.z.head(n);
  out.tau = run.z[n];
  out.iterations = run.iterations;
  out.status = run.status;
  return out;
}

}  // namespace dfnlp
