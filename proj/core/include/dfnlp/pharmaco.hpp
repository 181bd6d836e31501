#pragma once

// Tumor growth inhibition model with bolus dosing.
//
//   C'   = -th1 C
//   P'   = th4 P (1 - (P + Q + Qp) / K) + th5 Qp - th3 P - th1 th2 C P
//   Q'   = th3 P - th1 th2 C Q
//   Qp'  = th1 th2 C Q - (th5 + th6) Qp
//
// with C(0) = 0, P(0) = th7, Q(0) = th8, Qp(0) = 0. A dose a_i at t_i adds a_i
// to C and leaves the cell populations untouched.

#include <array>

#include "dfnlp/problem.hpp"
#include "dfnlp/types.hpp"

namespace dfnlp {

struct TumorParams {
  std::array<double, 8> theta{0.045, 4.52, 0.09, 0.11, 0.04, 0.00001, 0.09, 1.0};
  double K = 100.0;
  int n_doses = 4;
  double t_end = 200.0;
  double v_max = 1.1;
  double v_cum = 65.0;

  void validate() const;
};

struct DoseSchedule {
  Vector times;
  Vector amounts;
};

/// Sorted by time, clipped into [0, t_end], coincident times merged by summing.
DoseSchedule canonicalize(const DoseSchedule& sched, double t_end);

struct SimulationResult {
  double tumor_size = 0.0;  // P + Q + Qp at t_end
  double c_max = 0.0;
  double c_cum = 0.0;  // integral of C over [0, t_end]
};

/// Integrates the cell populations segment by segment between doses with an
/// adaptive Dormand-Prince 5(4) pair; C is analytic on each segment.
/// Throws NumericalError naming the time if the integrator stalls.
SimulationResult simulate(const TumorParams& params, const DoseSchedule& sched, double rtol = 1e-6,
                          double atol = 1e-9);

/// Drug concentration C(t) (right-continuous at dose times).
double concentration(const TumorParams& params, const DoseSchedule& sched, double t);

/// Decision vector (t_1..t_n, a_1..a_n). Objective: tumor size at t_end.
/// Inequalities: 0 <= c_max <= v_max and 0 <= c_cum <= v_cum. The default
/// start is t_i = t_end / 2, a_i = 0.5.
ProblemSpec tumor_problem(const TumorParams& params = {}, double rtol = 1e-6, double atol = 1e-9);

}  // namespace dfnlp
