#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dfnlp/types.hpp"

namespace dfnlp {

struct Probe {
  Vector point;
  double value;
};

struct GradientEstimate {
  Vector grad;
  double base_value = 0.0;
  std::vector<Probe> probes;  // one per coordinate, at z + delta e_i (or z - delta e_i)
};

/// Optional box used to keep probes inside the bounds. A probe that would
/// leave the box is taken backwards instead, z - delta e_i.
struct ProbeBox {
  const Vector* lower = nullptr;
  const Vector* upper = nullptr;
};

/// Forward-difference gradient. One base evaluation plus one per coordinate.
GradientEstimate forward_gradient(const std::function<double(const Vector&)>& fun, const Vector& z,
                                  double delta, ProbeBox box = {});

/// Forward-difference Jacobian; column i uses the same probe as forward_gradient.
Matrix forward_jacobian(const std::function<Vector(const Vector&)>& fun, const Vector& z,
                        double delta, ProbeBox box = {});

/// Implicit-filtering control of the shared difference step.
///
/// A relative decrease r of the merit function at least c_e * delta means the
/// model is doing well and the step grows by r_ed; a decrease at most
/// c_re * delta means progress has stalled at this resolution and the step
/// shrinks by r_rd. Anything in between leaves the step alone.
struct StepController {
  double delta = 1e-4;
  double delta0 = 1e-4;
  double c_e = 10.0;
  double c_re = 0.1;
  double r_ed = 2.0;
  double r_rd = 0.5;
  double delta_min = 1e-8;
  double delta_max = 1e-1;

  void validate() const;
  void reset() { delta = delta0; }
};

struct StepUpdate {
  StepController ctrl;
  bool changed = false;
};

StepUpdate update_step(const StepController& ctrl, double r);

}  // namespace dfnlp
