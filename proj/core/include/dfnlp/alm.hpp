#pragma once

#include <string>
#include <vector>

#include "dfnlp/problem.hpp"
#include "dfnlp/sqp.hpp"
#include "dfnlp/types.hpp"

namespace dfnlp {

/// Solver controls. Negative values for delta0, delta_max, eps_s, eps_a and max_evals
/// select the size-dependent defaults (see resolve()).
struct SolverOptions {
  double tol = 1e-4;
  double feas_tol = 1e-4;
  int max_outer = 50;
  int max_inner = 10;
  double rho0 = 1.0;
  double delta0 = -1.0;
  bool noisy = false;  // declared noise: larger default delta0
  int max_bisect = 3;

  double c_z = 10.0;
  double c_ir = 5.0;
  double r_ir = 5.0;
  double c_rr = 0.2;
  double r_rr = 0.2;
  double rho_max = 1e5;

  double eps_s = -1.0;
  double eps_a = -1.0;

  double c_e = 10.0;
  double c_re = 0.1;
  double r_ed = 2.0;
  double r_rd = 0.5;
  double delta_min = 1e-8;
  double delta_max = -1.0;  // < 0: 1e-1

  long max_evals = -1;
  int qp_max_iter = 100;
  std::uint64_t seed = 0;

  void validate() const;
  /// Copy with every automatic default filled in for a problem of this shape.
  SolverOptions resolve(const StandardForm& sf) const;
};

enum class SolveStatus { converged, max_outer, eval_budget, numerical_failure };
const char* to_string(SolveStatus status);

enum class RestartKind { none, soft, dual_reset };
const char* to_string(RestartKind kind);

struct OuterRecord {
  double objective = 0.0;
  double infeasibility = 0.0;
  double stationarity = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  RestartKind restart = RestartKind::none;
  long evals = 0;
};

struct SolveResult {
  Vector z_star;
  Vector x_star;
  Vector y_star;
  double objective = 0.0;
  double infeasibility = 0.0;
  SolveStatus status = SolveStatus::max_outer;
  long eval_count = 0;
  std::vector<OuterRecord> trace;
  std::string message;
};

/// f(x) - y'w + rho/2 ||w||^2 with w = G(z) - G_k - J (z - z_k).
double modified_AL(const Vector& z, const Vector& y, double rho, const Vector& z_k, const Vector& G_k,
                   const Matrix& J, StandardForm& sf);

double update_penalty(double rho, double v_k, double v_prev, const SolverOptions& opts);

/// ||P_[lower, upper](z - grad) - z||_inf
double projected_stationarity(const Vector& z, const Vector& grad, const Vector& lower, const Vector& upper);

/// Decide a restart from the change between two consecutive outer iterates.
/// `opts` must be resolved.
RestartKind check_restart(double f_prev, double f_k, double v_prev, double v_k, double stationarity,
                          const SolverOptions& opts);

SolveResult solve(const ProblemSpec& spec, const SolverOptions& opts = {});

/// Same, on a caller-owned standard form (its observer and budget are honoured).
SolveResult solve(StandardForm& sf, const SolverOptions& opts);

}  // namespace dfnlp
