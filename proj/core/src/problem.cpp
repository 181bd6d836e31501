#include "dfnlp/problem.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <sstream>

namespace dfnlp {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidProblem(what);
}

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace

void ProblemSpec::validate() const {
  require(n > 0, "dimension must be positive");
  require(m1 >= 0 && m2 >= 0, "constraint counts must be non-negative");
  require(static_cast<bool>(objective), "objective callback missing");
  require(m1 == 0 || static_cast<bool>(eq_con), "equality callback missing");
  require(m2 == 0 || static_cast<bool>(ineq_con), "inequality callback missing");
  require(x0.size() == n, "x0 has wrong length");
  require(box_lower.size() == n && box_upper.size() == n, "box bounds have wrong length");
  require(ineq_lower.size() == m2 && ineq_upper.size() == m2,
          "inequality bounds have wrong length");
  require(all_finite(x0), "x0 must be finite");
  for (int i = 0; i < n; ++i) {
    require(box_lower[i] <= box_upper[i], "box_lower > box_upper");
    const double lo = normalize_bound(box_lower[i]);
    const double hi = normalize_bound(box_upper[i]);
    if (is_finite_bound(lo) || is_finite_bound(hi)) {
      std::ostringstream os;
      os << "x0[" << i << "] is not strictly inside its bounds";
      require((!is_finite_bound(lo) || x0[i] > lo) && (!is_finite_bound(hi) || x0[i] < hi), os.str());
    }
  }
  for (int j = 0; j < m2; ++j) {
    require(ineq_lower[j] <= ineq_upper[j], "ineq_lower > ineq_upper");
    require(is_finite_bound(normalize_bound(ineq_lower[j])) ||
                is_finite_bound(normalize_bound(ineq_upper[j])),
            "unbounded inequality row");
  }
  if (ineq_guess) require(ineq_guess->size() == m2, "ineq_guess has wrong length");
}

Vector default_ineq_guess(const Vector& ineq_lower, const Vector& ineq_upper) {
  if (ineq_lower.size() != ineq_upper.size()) throw InvalidProblem("inequality bounds have wrong length");
  Vector guess(ineq_lower.size());
  for (Eigen::Index j = 0; j < guess.size(); ++j) {
    const double lo = normalize_bound(ineq_lower[j]);
    const double hi = normalize_bound(ineq_upper[j]);
    const bool has_lo = is_finite_bound(lo);
    const bool has_hi = is_finite_bound(hi);
    if (has_lo && has_hi) {
      guess[j] = 0.5 * (lo + hi);
    } else if (has_hi) {
      guess[j] = hi - 1.0;
    } else if (has_lo) {
      guess[j] = lo + 1.0;
    } else {
      throw InvalidProblem("unbounded inequality row");
    }
  }
  return clip_ineq_guess(guess, ineq_lower, ineq_upper);
}

Vector clip_ineq_guess(const Vector& guess, const Vector& ineq_lower, const Vector& ineq_upper) {
  Vector out = guess;
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const double lo = normalize_bound(ineq_lower[j]);
    const double hi = normalize_bound(ineq_upper[j]);
    const bool has_lo = is_finite_bound(lo);
    const bool has_hi = is_finite_bound(hi);
    if (has_lo && has_hi) {
      const double w = hi - lo;
      if (w > 0.0) {
        out[j] = std::clamp(out[j], lo + 0.05 * w, hi - 0.05 * w);
      } else {
        out[j] = lo;
      }
    } else if (has_lo && !(out[j] > lo)) {
      out[j] = lo + 1.0;
    } else if (has_hi && !(out[j] < hi)) {
      out[j] = hi - 1.0;
    }
  }
  return out;
}

StandardForm::StandardForm(ProblemSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  const int n = spec_.n;
  const int m2 = spec_.m2;
  lower_.resize(n + m2);
  upper_.resize(n + m2);
  z0_.resize(n + m2);
  for (int j = 0; j < m2; ++j) {
    lower_[j] = normalize_bound(spec_.ineq_lower[j]);
    upper_[j] = normalize_bound(spec_.ineq_upper[j]);
  }
  for (int i = 0; i < n; ++i) {
    lower_[m2 + i] = normalize_bound(spec_.box_lower[i]);
    upper_[m2 + i] = normalize_bound(spec_.box_upper[i]);
  }
  if (m2 > 0) {
    const Vector guess = spec_.ineq_guess
                             ? clip_ineq_guess(*spec_.ineq_guess, spec_.ineq_lower, spec_.ineq_upper)
                             : default_ineq_guess(spec_.ineq_lower, spec_.ineq_upper);
    z0_.head(m2) = guess;
  }
  z0_.tail(n) = spec_.x0;
}

void StandardForm::set_cache_capacity(std::size_t capacity) {
  cache_capacity_ = std::max<std::size_t>(capacity, 1);
  while (cache_.size() > cache_capacity_) cache_.pop_front();
}

const Evaluation& StandardForm::bundle(const Vector& x) {
  for (auto it = cache_.rbegin(); it != cache_.rend(); ++it) {
    if (it->first.size() == x.size() && it->first == x) return it->second;
  }
  if (eval_count_ >= budget_) throw BudgetExhausted("evaluation budget exhausted");

  Evaluation value;
  value.f = spec_.objective(x);
  value.g = spec_.m1 > 0 ? spec_.eq_con(x) : Vector();
  value.h = spec_.m2 > 0 ? spec_.ineq_con(x) : Vector();
  ++eval_count_;
  if (value.g.size() != spec_.m1 || value.h.size() != spec_.m2) {
    throw InvalidProblem("constraint callback returned a vector of the wrong length");
  }
  if (!std::isfinite(value.f) || !value.g.allFinite() || !value.h.allFinite()) {
    throw NumericalError("non-finite callback value", x);
  }

  if (cache_.size() >= cache_capacity_) cache_.pop_front();
  cache_.emplace_back(x, std::move(value));
  const auto& stored = cache_.back();
  if (observer_) observer_(EvaluationRecord{eval_count_, stored.first, stored.second});
  return stored.second;
}

Vector StandardForm::combined_eq(const Vector& z) {
  const int m1 = spec_.m1;
  const int m2 = spec_.m2;
  const Evaluation& value = bundle(x_part(z));
  Vector out(m1 + m2);
  out.head(m1) = value.g;
  for (int j = 0; j < m2; ++j) out[m1 + j] = value.h[j] - z[j];
  return out;
}

StandardForm to_standard_form(ProblemSpec spec) { return StandardForm(std::move(spec)); }

namespace {

double box_violation(const Vector& z, const Vector& lower, const Vector& upper) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double lo = normalize_bound(lower[i]);
    const double hi = normalize_bound(upper[i]);
    if (is_finite_bound(lo)) v = std::max(v, lo - z[i]);
    if (is_finite_bound(hi)) v = std::max(v, z[i] - hi);
  }
  return v;
}

}  // namespace

double infeasibility(StandardForm& sf, const Vector& z) {
  const Vector eq = sf.combined_eq(z);
  const double eq_norm = eq.size() > 0 ? eq.lpNorm<Eigen::Infinity>() : 0.0;
  return eq_norm + box_violation(z, sf.lower(), sf.upper());
}

double constraint_violation(const ProblemSpec& spec, const Vector& x, const Evaluation& value) {
  double v = value.g.size() > 0 ? value.g.lpNorm<Eigen::Infinity>() : 0.0;
  v = std::max(v, box_violation(value.h, spec.ineq_lower, spec.ineq_upper));
  v = std::max(v, box_violation(x, spec.box_lower, spec.box_upper));
  return v;
}

ProblemSpec apply_noise(const ProblemSpec& spec, const NoiseModel& model) {
  if (model.magnitude < 0.0) throw InvalidProblem("noise magnitude must be non-negative");
  if (model.magnitude == 0.0) return spec;

  struct State {
    std::mt19937_64 rng;
    std::normal_distribution<double> normal{0.0, 1.0};
  };
  auto state = std::make_shared<State>();
  state->rng.seed(model.seed);
  const double mag = model.magnitude;

  ProblemSpec noisy = spec;
  noisy.objective = [f = spec.objective, state, mag](const Vector& x) {
    const double value = f(x);
    return (1.0 + mag * state->normal(state->rng)) * value;
  };
  auto wrap = [state, mag](VectorFn fn) -> VectorFn {
    if (!fn) return fn;
    return [fn = std::move(fn), state, mag](const Vector& x) {
      Vector value = fn(x);
      for (Eigen::Index i = 0; i < value.size(); ++i) {
        value[i] *= 1.0 + mag * state->normal(state->rng);
      }
      return value;
    };
  };
  noisy.eq_con = wrap(spec.eq_con);
  noisy.ineq_con = wrap(spec.ineq_con);
  return noisy;
}

}  // namespace dfnlp
