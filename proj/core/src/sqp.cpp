#include "dfnlp/sqp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dfnlp {

Matrix bfgs_update(const Matrix& H, const Vector& t, const Vector& s, double curvature_eps) {
  const double ts = t.dot(s);
  if (!(ts > curvature_eps * t.norm() * s.norm())) return H;
  const Vector Hs = H * s;
  const double sHs = s.dot(Hs);
  if (!(sHs > 0.0)) return H;
  Matrix out = H + (t * t.transpose()) / ts - (Hs * Hs.transpose()) / sHs;
  return 0.5 * (out + out.transpose());
}

namespace {

double safe_eval(const MeritFn& L, const Vector& z) {
  try {
    const double v = L(z);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  } catch (const NumericalError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

LineSearchResult line_search(const MeritFn& L, const Vector& z_i, const Vector& z_tilde, int max_bisect,
                             std::optional<double> value_at_z_i) {
  const double start_value = value_at_z_i ? *value_at_z_i : L(z_i);
  if (z_tilde == z_i) return {z_i, start_value};

  LineSearchResult best{z_i, start_value};
  const double tilde_value = safe_eval(L, z_tilde);
  if (tilde_value < start_value) return {z_tilde, tilde_value};

  Vector lo = z_i, hi = z_tilde;
  double lo_value = start_value, hi_value = tilde_value;
  for (int b = 0; b < max_bisect; ++b) {
    const Vector mid = 0.5 * (lo + hi);
    const double mid_value = safe_eval(L, mid);
    if (mid_value < best.value) best = {mid, mid_value};
    if (mid_value < start_value) break;
    if (lo_value <= hi_value) {
      hi = mid;
      hi_value = mid_value;
    } else {
      lo = mid;
      lo_value = mid_value;
    }
  }
  return best;
}

namespace {

void offer_probes(StandardForm& sf, const std::vector<Probe>& probes, double feas_tol,
                  std::optional<BestPoint>& best) {
  for (const Probe& p : probes) {
    const Vector eq = sf.combined_eq(p.point);
    if (eq.size() > 0 && !(eq.lpNorm<Eigen::Infinity>() < feas_tol)) continue;
    const double f = sf.objective(p.point);
    if (!best || f < best->objective) best = BestPoint{p.point, f};
  }
}

}  // namespace

InnerResult run_inner(StandardForm& sf, const MeritFn& L, const Vector& z_k, const Matrix& J,
                      const Vector& rhs_shift, const Matrix& H0, const StepController& ctrl,
                      const InnerOptions& opts, InnerStart start) {
  InnerResult out;
  out.ctrl = ctrl;
  InnerState& state = out.state;
  state.z_i = std::move(start.z0);
  state.H = H0;

  const ProbeBox box{&sf.lower(), &sf.upper()};
  GradientEstimate grad = start.grad ? std::move(*start.grad) : forward_gradient(L, state.z_i, ctrl.delta, box);
  offer_probes(sf, grad.probes, opts.feas_tol, state.best_feasible);
  state.grad_L = grad.grad;
  double L_i = grad.base_value;
  state.L_values.push_back(L_i);

  const Vector b = J * z_k + rhs_shift;
  out.y_next = Vector::Zero(J.rows());

  AffineScalingOptions qp_opts;
  qp_opts.max_iter = opts.qp_max_iter;
  qp_opts.step_fraction = opts.qp_step_fraction;

  for (int i = 0; i < opts.max_inner; ++i) {
    QpProblem qp{state.H, state.grad_L, J, b, sf.lower(), sf.upper(), state.z_i, state.z_i};
    const QpSolution sol = solve_qp(qp, qp_opts);
    ++out.qp_solves;
    if (sol.status == QpStatus::numerical_failure) {
      throw NumericalError("QP subproblem failed", state.z_i);
    }
    out.y_next = sol.y;

    const LineSearchResult ls = line_search(L, state.z_i, sol.z, opts.max_bisect, L_i);
    const double r = (L_i - ls.value) / std::max(1.0, std::abs(L_i));
    const StepUpdate upd = update_step(out.ctrl, r);
    out.ctrl = upd.ctrl;
    out.step_changed = out.step_changed || upd.changed;
    ++state.inner_iter;

    const bool moved = ls.z != state.z_i;
    const bool stop = upd.changed || r < 0.1 * opts.tol || !moved || i + 1 == opts.max_inner;
    // The probes at the new point (with the current delta) are the ones the
    // next Jacobian uses, so the update costs nothing extra.
    if (moved) {
      GradientEstimate next = forward_gradient(L, ls.z, out.ctrl.delta, box);
      offer_probes(sf, next.probes, opts.feas_tol, state.best_feasible);
      state.H = bfgs_update(state.H, next.grad - state.grad_L, ls.z - state.z_i, opts.curvature_eps);
      state.grad_L = std::move(next.grad);
    }
    state.z_i = ls.z;
    L_i = ls.value;
    if (opts.on_iterate) opts.on_iterate(state.z_i);
    state.L_values.push_back(L_i);
    if (stop) break;
  }

  out.z_next = state.z_i;
  out.L_next = L_i;
  return out;
}

}  // namespace dfnlp
