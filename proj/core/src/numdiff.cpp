#include "dfnlp/numdiff.hpp"

#include <algorithm>
#include <cmath>

namespace dfnlp {

namespace {

// Signed offset for coordinate i: +delta unless that leaves the box.
// If neither direction fits, half of the larger gap is used.
double probe_offset(const Vector& z, Eigen::Index i, double delta, const ProbeBox& box) {
  const double hi = box.upper != nullptr ? (*box.upper)[i] : kInfinity;
  const double lo = box.lower != nullptr ? (*box.lower)[i] : -kInfinity;
  const bool up_ok = !is_finite_bound(hi) || z[i] + delta <= hi;
  if (up_ok) return delta;
  const bool down_ok = !is_finite_bound(lo) || z[i] - delta >= lo;
  if (down_ok) return -delta;
  const double room_up = hi - z[i];
  const double room_down = z[i] - lo;
  return room_up >= room_down ? 0.5 * room_up : -0.5 * room_down;
}

double checked(double v, const Vector& at) {
  if (!std::isfinite(v)) throw NumericalError("non-finite function value in finite difference", at);
  return v;
}

}  // namespace

GradientEstimate forward_gradient(const std::function<double(const Vector&)>& fun, const Vector& z,
                                  double delta, ProbeBox box) {
  if (!(delta > 0.0)) throw Error("forward_gradient: delta must be positive");
  GradientEstimate out;
  out.base_value = checked(fun(z), z);
  out.grad.resize(z.size());
  out.probes.reserve(static_cast<std::size_t>(z.size()));
  Vector p = z;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double h = probe_offset(z, i, delta, box);
    p[i] = z[i] + h;
    const double v = checked(fun(p), p);
    // Divide by the realized step; z + h may round.
    out.grad[i] = (v - out.base_value) / (p[i] - z[i]);
    out.probes.push_back(Probe{p, v});
    p[i] = z[i];
  }
  return out;
}

Matrix forward_jacobian(const std::function<Vector(const Vector&)>& fun, const Vector& z, double delta,
                        ProbeBox box) {
  if (!(delta > 0.0)) throw Error("forward_jacobian: delta must be positive");
  const Vector base = fun(z);
  if (!base.allFinite()) throw NumericalError("non-finite constraint value in finite difference", z);
  Matrix jac(base.size(), z.size());
  Vector p = z;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double h = probe_offset(z, i, delta, box);
    p[i] = z[i] + h;
    const Vector v = fun(p);
    if (!v.allFinite()) throw NumericalError("non-finite constraint value in finite difference", p);
    jac.col(i) = (v - base) / (p[i] - z[i]);
    p[i] = z[i];
  }
  return jac;
}

void StepController::validate() const {
  if (!(r_ed > 1.0)) throw Error("StepController: r_ed must exceed 1");
  if (!(r_rd > 0.0 && r_rd < 1.0)) throw Error("StepController: r_rd must lie in (0, 1)");
  if (!(c_re < c_e)) throw Error("StepController: c_re must be below c_e");
  if (!(delta_min > 0.0 && delta_min <= delta_max)) throw Error("StepController: bad clamp range");
}

StepUpdate update_step(const StepController& ctrl, double r) {
  StepUpdate out{ctrl, false};
  if (r >= ctrl.c_e * ctrl.delta) {
    out.ctrl.delta = std::clamp(ctrl.r_ed * ctrl.delta, ctrl.delta_min, ctrl.delta_max);
  } else if (r <= ctrl.c_re * ctrl.delta) {
    out.ctrl.delta = std::clamp(ctrl.r_rd * ctrl.delta, ctrl.delta_min, ctrl.delta_max);
  }
  // Pinned at a clamp counts as unchanged: the inner loop only stops when the
  // resolution actually moves.
  out.changed = out.ctrl.delta != ctrl.delta;
  return out;
}

}  // namespace dfnlp
