#include "dfnlp/alm.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "dfnlp/numdiff.hpp"
#include "dfnlp/subsolver.hpp"

namespace dfnlp {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_outer:
      return "max-outer";
    case SolveStatus::eval_budget:
      return "eval-budget";
    case SolveStatus::numerical_failure:
      return "numerical-failure";
  }
  return "unknown";
}

const char* to_string(RestartKind kind) {
  switch (kind) {
    case RestartKind::none:
      return "none";
    case RestartKind::soft:
      return "soft";
    case RestartKind::dual_reset:
      return "dual-reset";
  }
  return "unknown";
}

void SolverOptions::validate() const {
  if (!(tol > 0.0)) throw Error("SolverOptions: tol must be positive");
  if (!(feas_tol > 0.0)) throw Error("SolverOptions: feas_tol must be positive");
  if (max_outer < 1 || max_inner < 1) throw Error("SolverOptions: iteration limits must be at least 1");
  if (!(rho0 >= 0.0)) throw Error("SolverOptions: rho0 must be non-negative");
  if (!(c_z > 1.0)) throw Error("SolverOptions: c_z must exceed 1");
  if (!(r_ir > 1.0)) throw Error("SolverOptions: r_ir must exceed 1");
  if (!(r_rr > 0.0 && r_rr < 1.0)) throw Error("SolverOptions: r_rr must lie in (0, 1)");
  if (max_bisect < 0) throw Error("SolverOptions: max_bisect must be non-negative");
  StepController{1e-4, 1e-4, c_e, c_re, r_ed, r_rd, delta_min, delta_max > 0.0 ? delta_max : 1.0}.validate();
}

SolverOptions SolverOptions::resolve(const StandardForm& sf) const {
  SolverOptions out = *this;
  const double dim = static_cast<double>(sf.dim());
  // Step sizes follow the scale of the user variables; slacks are excluded
  // since their magnitude is set by the inequality bounds.
  const double scale = std::max(1.0, sf.spec().x0.lpNorm<Eigen::Infinity>());
  if (out.delta0 <= 0.0) out.delta0 = noisy ? 1e-2 : 1e-4 * scale;
  if (out.delta_max <= 0.0) out.delta_max = 1e-1;
  out.delta_min *= scale;
  out.delta_max *= scale;
  out.delta_max = std::max(out.delta_max, out.delta0);
  out.delta_min = std::min(out.delta_min, out.delta0);
  if (out.eps_s <= 0.0) out.eps_s = tol;
  if (out.eps_a <= 0.0) out.eps_a = 1e-2 * std::sqrt(dim);
  if (out.max_evals <= 0) out.max_evals = 10L * sf.dim() * max_outer * max_inner;
  return out;
}

double modified_AL(const Vector& z, const Vector& y, double rho, const Vector& z_k, const Vector& G_k,
                   const Matrix& J, StandardForm& sf) {
  const double f = sf.objective(z);
  if (sf.rows() == 0) return f;
  const Vector w = sf.combined_eq(z) - G_k - J * (z - z_k);
  return f - y.dot(w) + 0.5 * rho * w.squaredNorm();
}

double update_penalty(double rho, double v_k, double v_prev, const SolverOptions& opts) {
  if (v_k <= opts.c_z * opts.tol) return 0.0;
  if (v_k >= opts.c_ir * v_prev) {
    // A zero penalty would stay zero under scaling; restart it from a floor.
    const double base = std::max(rho, std::sqrt(opts.tol));
    return std::min(opts.r_ir * base, opts.rho_max);
  }
  if (v_k <= opts.c_rr * v_prev) return opts.r_rr * rho;
  return rho;
}

double projected_stationarity(const Vector& z, const Vector& grad, const Vector& lower, const Vector& upper) {
  const Vector p = (z - grad).cwiseMax(lower).cwiseMin(upper);
  return (p - z).lpNorm<Eigen::Infinity>();
}

RestartKind check_restart(double f_prev, double f_k, double v_prev, double v_k, double stationarity,
                          const SolverOptions& opts) {
  if (f_k > f_prev && v_k > v_prev) return RestartKind::dual_reset;
  const double rel_decrease = (f_prev - f_k) / std::max(1.0, std::abs(f_prev));
  if (rel_decrease <= opts.eps_s && stationarity > opts.eps_a) return RestartKind::soft;
  return RestartKind::none;
}

namespace {

bool strictly_interior(const Vector& z, const Vector& lower, const Vector& upper) {
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (is_finite_bound(lower[j]) && !(z[j] > lower[j])) return false;
    if (is_finite_bound(upper[j]) && !(z[j] < upper[j])) return false;
  }
  return true;
}

bool fully_free(const StandardForm& sf) {
  for (Eigen::Index j = 0; j < sf.lower().size(); ++j) {
    if (is_finite_bound(sf.lower()[j]) || is_finite_bound(sf.upper()[j])) return false;
  }
  return true;
}

struct Candidate {
  Vector z;
  double f = 0.0;
  double v = 0.0;
};

// Feasible beats infeasible; among feasible the lower objective wins; among
// infeasible the smaller violation wins.
bool better(const Candidate& a, const Candidate& b, double feas_tol) {
  const bool fa = a.v < feas_tol, fb = b.v < feas_tol;
  if (fa != fb) return fa;
  if (fa) return a.f < b.f;
  return a.v < b.v;
}

// Chains an extra observer in front of the caller's for the lifetime of a solve.
class ObserverScope {
 public:
  ObserverScope(StandardForm& sf, const EvaluationObserver& extra) : sf_(sf), saved_(sf.observer()) {
    sf_.set_observer([this, extra](const EvaluationRecord& r) {
      extra(r);
      if (saved_) saved_(r);
    });
  }
  ~ObserverScope() { sf_.set_observer(saved_); }
  ObserverScope(const ObserverScope&) = delete;
  ObserverScope& operator=(const ObserverScope&) = delete;

 private:
  StandardForm& sf_;
  EvaluationObserver saved_;
};

}  // namespace

SolveResult solve(const ProblemSpec& spec, const SolverOptions& opts) {
  StandardForm sf(spec);
  return solve(sf, opts);
}

SolveResult solve(StandardForm& sf, const SolverOptions& user_opts) {
  user_opts.validate();
  const SolverOptions opts = user_opts.resolve(sf);
  const long budget_before = sf.budget();
  sf.set_budget(std::min(budget_before, sf.eval_count() + opts.max_evals));

  const ProblemSpec& spec = sf.spec();
  const int dim = sf.dim();
  const int rows = sf.rows();
  const ProbeBox box{&sf.lower(), &sf.upper()};
  const bool free_problem = fully_free(sf);

  SolveResult result;
  Vector z = sf.z0();
  Vector y = Vector::Zero(rows);
  double rho = opts.rho0;
  StepController ctrl{opts.delta0, opts.delta0, opts.c_e, opts.c_re, opts.r_ed, opts.r_rd, opts.delta_min,
                      opts.delta_max};
  Matrix H;

  auto user_violation = [&](const Vector& zz) {
    const Vector x = sf.x_part(zz);
    return constraint_violation(spec, x, sf.bundle(x));
  };
  std::optional<Candidate> best;
  auto consider = [&](const Vector& zz) {
    Candidate c{zz, sf.objective(zz), user_violation(zz)};
    if (!best || better(c, *best, opts.feas_tol)) best = std::move(c);
  };

  // Best feasible point over every fresh evaluation, slack set to h(x).
  std::optional<Candidate> best_evaluated;
  const ObserverScope scope(sf, [&](const EvaluationRecord& r) {
    const double v = constraint_violation(spec, r.x, r.value);
    if (!(v < opts.feas_tol) || (best_evaluated && !(r.value.f < best_evaluated->f))) return;
    Vector zz(dim);
    for (int j = 0; j < sf.m2(); ++j) zz[j] = std::clamp(r.value.h[j], sf.lower()[j], sf.upper()[j]);
    zz.tail(sf.n()) = r.x;
    best_evaluated = Candidate{std::move(zz), r.value.f, v};
  });

  double f_prev = 0.0, v_prev = 0.0;
  try {
    const double f0 = sf.objective(z);
    H = Matrix::Identity(dim, dim) * std::max(1.0, std::abs(f0));

    for (int k = 0; k < opts.max_outer; ++k) {
      OuterRecord rec;
      const double f_k = sf.objective(z);
      const Vector G_k = rows > 0 ? sf.combined_eq(z) : Vector();
      const double v_k = infeasibility(sf, z);
      consider(z);

      Matrix J(rows, dim);
      if (rows > 0) J = forward_jacobian([&](const Vector& p) { return sf.combined_eq(p); }, z, ctrl.delta, box);
      const Vector gf = forward_gradient([&](const Vector& p) { return sf.objective(p); }, z, ctrl.delta, box).grad;
      const Vector grad_lag = rows > 0 ? Vector(gf - J.transpose() * y) : gf;
      const double stat = projected_stationarity(z, grad_lag, sf.lower(), sf.upper());

      rec.objective = f_k;
      rec.infeasibility = v_k;
      rec.stationarity = stat;

      if (k > 0) {
        const double rel_decrease = std::abs(f_prev - f_k) / std::max(1.0, std::abs(f_prev));
        if (stat <= opts.tol && v_k <= opts.feas_tol && rel_decrease <= opts.eps_s) {
          rec.rho = rho;
          rec.delta = ctrl.delta;
          rec.evals = sf.eval_count();
          result.trace.push_back(rec);
          result.status = SolveStatus::converged;
          break;
        }
        rho = update_penalty(rho, v_k, v_prev, opts);
        rec.restart = check_restart(f_prev, f_k, v_prev, v_k, stat, opts);
        if (rec.restart != RestartKind::none) {
          if (rec.restart == RestartKind::dual_reset) y.setZero();
          ctrl.reset();
          H = Matrix(H.diagonal().asDiagonal());
        }
      }
      rec.rho = rho;
      rec.delta = ctrl.delta;

      // Restore linearized feasibility: J (z0 - z_k) = rhs_shift.
      Vector z0 = z;
      if (rows > 0 && G_k.lpNorm<Eigen::Infinity>() > 0.0) {
        bool done = false;
        if (free_problem) {
          try {
            z0 = project_free(z, J, G_k);
            done = true;
          } catch (const NumericalError&) {
          }
        }
        if (!done) {
          const FeasibilityResult lp = solve_feasibility_lp(J, G_k, z, sf.lower(), sf.upper());
          if (lp.z0.allFinite() && strictly_interior(lp.z0, sf.lower(), sf.upper())) z0 = lp.z0;
        }
      }
      const Vector rhs_shift = rows > 0 ? Vector(J * (z0 - z)) : Vector();

      const Vector z_k = z;
      const MeritFn L = [&, z_k, G_k, J, y, rho](const Vector& p) {
        return modified_AL(p, y, rho, z_k, G_k, J, sf);
      };
      InnerOptions inner_opts;
      inner_opts.max_inner = opts.max_inner;
      inner_opts.max_bisect = opts.max_bisect;
      inner_opts.tol = opts.tol;
      inner_opts.feas_tol = opts.feas_tol;
      inner_opts.qp_max_iter = opts.qp_max_iter;
      inner_opts.on_iterate = consider;

      const InnerResult inner = run_inner(sf, L, z_k, J, rhs_shift, H, ctrl, inner_opts, InnerStart{z0, {}});
      H = inner.state.H;
      ctrl = inner.ctrl;
      if (rows > 0) y = inner.y_next;
      z = inner.z_next;

      const auto& bf = inner.state.best_feasible;
      // A probe only replaces the iterate if it is no less feasible, unless the
      // iterate itself is outside the tolerance.
      if (bf && strictly_interior(bf->z, sf.lower(), sf.upper()) && bf->objective < sf.objective(z) &&
          (infeasibility(sf, bf->z) <= infeasibility(sf, z) || infeasibility(sf, z) >= opts.feas_tol)) {
        z = bf->z;
        consider(z);
      }

      f_prev = f_k;
      v_prev = v_k;
      rec.evals = sf.eval_count();
      result.trace.push_back(rec);
      if (k + 1 == opts.max_outer) {
        consider(z);
        result.status = SolveStatus::max_outer;
      }
    }
  } catch (const BudgetExhausted&) {
    result.status = SolveStatus::eval_budget;
  } catch (const NumericalError& e) {
    result.status = SolveStatus::numerical_failure;
    result.message = e.what();
  }
  sf.set_budget(budget_before);

  // Without convergence, report the best feasible point seen anywhere.
  if (result.status != SolveStatus::converged && best_evaluated &&
      (!best || better(*best_evaluated, *best, opts.feas_tol))) {
    best = best_evaluated;
  }
  if (!best) {
    // Nothing was ever evaluated within budget; report the start.
    result.z_star = sf.z0();
    result.x_star = sf.x_part(result.z_star);
    result.objective = std::numeric_limits<double>::quiet_NaN();
    result.infeasibility = std::numeric_limits<double>::infinity();
  } else {
    result.z_star = best->z;
    result.x_star = sf.x_part(best->z);
    result.objective = best->f;
    result.infeasibility = best->v;
  }
  result.y_star = y;
  result.eval_count = sf.eval_count();
  return result;
}

}  // namespace dfnlp
