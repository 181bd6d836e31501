#include "dfnlp/pharmaco.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace dfnlp {

namespace odeint = boost::numeric::odeint;

void TumorParams::validate() const {
  if (!(theta[0] > 0.0)) throw Error("TumorParams: theta_1 must be positive");
  if (!(K > 0.0)) throw Error("TumorParams: K must be positive");
  if (!(t_end > 0.0)) throw Error("TumorParams: t_end must be positive");
  if (n_doses < 1) throw Error("TumorParams: need at least one dose");
}

DoseSchedule canonicalize(const DoseSchedule& sched, double t_end) {
  if (sched.times.size() != sched.amounts.size()) throw Error("DoseSchedule: times and amounts differ in length");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(sched.times.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto clipped = [&](Eigen::Index i) { return std::clamp(sched.times[i], 0.0, t_end); };
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return clipped(a) < clipped(b); });

  std::vector<double> t, a;
  for (Eigen::Index i : order) {
    const double ti = clipped(i);
    if (!t.empty() && t.back() == ti) {
      a.back() += sched.amounts[i];
    } else {
      t.push_back(ti);
      a.push_back(sched.amounts[i]);
    }
  }
  DoseSchedule out;
  out.times = Eigen::Map<const Vector>(t.data(), static_cast<Eigen::Index>(t.size()));
  out.amounts = Eigen::Map<const Vector>(a.data(), static_cast<Eigen::Index>(a.size()));
  return out;
}

namespace {

using State = std::array<double, 3>;

struct Segment {
  double start;
  double end;
  double c_start;  // C just after any dose at `start`
};

std::vector<Segment> segments(const TumorParams& p, const DoseSchedule& canon) {
  const double th1 = p.theta[0];
  std::vector<Segment> out;
  double t = 0.0, c = 0.0;
  Eigen::Index next = 0;
  while (next < canon.times.size() && canon.times[next] == 0.0) c += canon.amounts[next++];
  while (true) {
    const double t_next = next < canon.times.size() ? canon.times[next] : p.t_end;
    out.push_back(Segment{t, t_next, c});
    if (next >= canon.times.size()) break;
    c = c * std::exp(-th1 * (t_next - t)) + canon.amounts[next];
    t = t_next;
    ++next;
  }
  return out;
}

}  // namespace

double concentration(const TumorParams& params, const DoseSchedule& sched, double t) {
  const DoseSchedule canon = canonicalize(sched, params.t_end);
  double c = 0.0;
  for (const Segment& s : segments(params, canon)) {
    if (t >= s.start) c = s.c_start * std::exp(-params.theta[0] * (t - s.start));
  }
  return c;
}

SimulationResult simulate(const TumorParams& params, const DoseSchedule& sched, double rtol, double atol) {
  params.validate();
  if (!(rtol > 0.0 && atol > 0.0)) throw Error("simulate: tolerances must be positive");
  const DoseSchedule canon = canonicalize(sched, params.t_end);
  const auto& th = params.theta;
  const double K = params.K;

  SimulationResult out;
  State y{th[6], th[7], 0.0};
  auto stepper = odeint::make_controlled(atol, rtol, odeint::runge_kutta_dopri5<State>());

  for (const Segment& seg : segments(params, canon)) {
    out.c_max = std::max(out.c_max, seg.c_start);
    const double len = seg.end - seg.start;
    if (len <= 0.0) continue;
    out.c_cum += seg.c_start * (1.0 - std::exp(-th[0] * len)) / th[0];

    const double t0 = seg.start, c0 = seg.c_start;
    auto rhs = [&](const State& s, State& ds, double t) {
      const double c = c0 * std::exp(-th[0] * (t - t0));
      const double kill = th[0] * th[1] * c;
      const double total = s[0] + s[1] + s[2];
      ds[0] = th[3] * s[0] * (1.0 - total / K) + th[4] * s[2] - th[2] * s[0] - kill * s[0];
      ds[1] = th[2] * s[0] - kill * s[1];
      ds[2] = kill * s[1] - (th[4] + th[5]) * s[2];
    };
    double t_reached = seg.start;
    try {
      odeint::integrate_adaptive(stepper, rhs, y, seg.start, seg.end, std::min(1.0, len),
                                 [&](const State&, double t) { t_reached = t; });
    } catch (const std::runtime_error& e) {
      throw NumericalError("tumor integration stalled at t=" + std::to_string(t_reached) + ": " + e.what());
    }
    if (!std::isfinite(y[0] + y[1] + y[2])) {
      throw NumericalError("tumor integration diverged at t=" + std::to_string(t_reached));
    }
  }
  out.tumor_size = y[0] + y[1] + y[2];
  return out;
}

ProblemSpec tumor_problem(const TumorParams& params, double rtol, double atol) {
  params.validate();
  const int n = params.n_doses;
  ProblemSpec spec;
  spec.n = 2 * n;
  spec.m2 = 2;
  spec.box_lower = Vector::Zero(2 * n);
  spec.box_upper.resize(2 * n);
  spec.box_upper << Vector::Constant(n, params.t_end), Vector::Ones(n);
  spec.ineq_lower = Vector::Zero(2);
  spec.ineq_upper.resize(2);
  spec.ineq_upper << params.v_max, params.v_cum;
  spec.x0.resize(2 * n);
  spec.x0 << Vector::Constant(n, params.t_end / 2), Vector::Constant(n, 0.5);

  // Objective and constraints come from one simulation; remember the last one.
  struct Memo {
    Vector x;
    SimulationResult r;
  };
  auto memo = std::make_shared<std::optional<Memo>>();
  auto run = [params, rtol, atol, memo, n](const Vector& x) -> const SimulationResult& {
    if (!*memo || (*memo)->x != x) {
      DoseSchedule s{x.head(n), x.tail(n)};
      *memo = Memo{x, simulate(params, s, rtol, atol)};
    }
    return (*memo)->r;
  };
  spec.objective = [run](const Vector& x) { return run(x).tumor_size; };
  spec.ineq_con = [run](const Vector& x) {
    const SimulationResult& r = run(x);
    Vector c(2);
    c << r.c_max, r.c_cum;
    return c;
  };
  return spec;
}

}  // namespace dfnlp
