#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dfnlp/numdiff.hpp"
#include "dfnlp/problem.hpp"
#include "dfnlp/subsolver.hpp"
#include "dfnlp/types.hpp"

namespace dfnlp {

using MeritFn = std::function<double(const Vector&)>;

/// BFGS update of a Hessian model. Skipped (H returned unchanged) unless
/// t's > curvature_eps * ||t|| ||s||, which keeps H positive definite.
Matrix bfgs_update(const Matrix& H, const Vector& t, const Vector& s, double curvature_eps = 1e-12);

struct LineSearchResult {
  Vector z;
  double value = 0.0;
};

/// Bisection between z_i and z_tilde. z_tilde is accepted outright when it
/// improves on z_i; otherwise up to max_bisect midpoints are tried, each time
/// keeping the half next to the better endpoint, stopping at the first
/// midpoint that improves on z_i. Returns the best evaluated candidate.
LineSearchResult line_search(const MeritFn& L, const Vector& z_i, const Vector& z_tilde, int max_bisect,
                             std::optional<double> value_at_z_i = std::nullopt);

struct BestPoint {
  Vector z;
  double objective = 0.0;
};

struct InnerState {
  Vector z_i;
  Matrix H;
  Vector grad_L;
  std::optional<BestPoint> best_feasible;
  int inner_iter = 0;
  std::vector<double> L_values;
};

struct InnerOptions {
  int max_inner = 10;
  int max_bisect = 3;
  double tol = 1e-4;
  double feas_tol = 1e-4;
  int qp_max_iter = 100;
  double qp_step_fraction = 0.9;
  double curvature_eps = 1e-12;
  std::function<void(const Vector&)> on_iterate;  // called with each accepted inner point
};

/// Where the inner loop starts: the restored point z0 (with J (z0 - z_k) =
/// rhs_shift) and, optionally, an already computed merit gradient at z0.
struct InnerStart {
  Vector z0;
  std::optional<GradientEstimate> grad;
};

struct InnerResult {
  Vector z_next;
  double L_next = 0.0;
  Vector y_next;
  InnerState state;
  StepController ctrl;
  bool step_changed = false;
  int qp_solves = 0;
};

/// Sequential QP on the merit function L under the linearized equalities
/// J (z - z_k) = rhs_shift and the box. Every gradient probe that satisfies
/// ||G|| < feas_tol is offered to state.best_feasible.
InnerResult run_inner(StandardForm& sf, const MeritFn& L, const Vector& z_k, const Matrix& J,
                      const Vector& rhs_shift, const Matrix& H0, const StepController& ctrl,
                      const InnerOptions& opts, InnerStart start);

}  // namespace dfnlp
