#pragma once

// Problem model.
//
//   min  f(x)
//   s.t. g(x) = 0                  (m1 rows)
//        l_h <= h(x) <= u_h        (m2 rows)
//        l_x <=  x   <= u_x
//
// The solver works on the slack form over z = [s; x]:
//
//   min f(x)  s.t.  G(z) = [g(x); h(x) - s] = 0,  [l_h; l_x] <= z <= [u_h; u_x]

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <utility>

#include "dfnlp/types.hpp"

namespace dfnlp {

using ScalarFn = std::function<double(const Vector&)>;
using VectorFn = std::function<Vector(const Vector&)>;

struct ProblemSpec {
  int n = 0;
  int m1 = 0;
  int m2 = 0;
  ScalarFn objective;
  VectorFn eq_con;    // may be empty when m1 == 0
  VectorFn ineq_con;  // may be empty when m2 == 0
  Vector ineq_lower;
  Vector ineq_upper;
  Vector box_lower;
  Vector box_upper;
  Vector x0;
  std::optional<Vector> ineq_guess;

  /// Throws InvalidProblem naming the first violated structural invariant.
  void validate() const;
};

/// One joint evaluation of (f, g, h) at a point x.
struct Evaluation {
  double f = 0.0;
  Vector g;
  Vector h;
};

/// Initial slack values: midpoint for two-sided rows, one unit inside the
/// finite side otherwise, then clipped into the open interval.
Vector default_ineq_guess(const Vector& ineq_lower, const Vector& ineq_upper);

/// Clips a (possibly user supplied) slack guess strictly inside its bounds.
/// Two-sided rows land in [l + 0.05 w, u - 0.05 w].
Vector clip_ineq_guess(const Vector& guess, const Vector& ineq_lower, const Vector& ineq_upper);

/// Observer invoked once per fresh bundle evaluation (cache misses only).
struct EvaluationRecord {
  long index;  // 1-based
  const Vector& x;
  const Evaluation& value;
};
using EvaluationObserver = std::function<void(const EvaluationRecord&)>;

class StandardForm {
 public:
  static constexpr long kUnlimited = std::numeric_limits<long>::max();

  explicit StandardForm(ProblemSpec spec);

  int dim() const { return spec_.n + spec_.m2; }
  int n() const { return spec_.n; }
  int m1() const { return spec_.m1; }
  int m2() const { return spec_.m2; }
  int rows() const { return spec_.m1 + spec_.m2; }

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const Vector& z0() const { return z0_; }
  const ProblemSpec& spec() const { return spec_; }

  Vector x_part(const Vector& z) const { return z.tail(spec_.n); }
  Vector slack_part(const Vector& z) const { return z.head(spec_.m2); }

  /// User-level bundle at x. Cached on exact x, so probes that only move a
  /// slack coordinate cost nothing.
  const Evaluation& bundle(const Vector& x);

  double objective(const Vector& z) { return bundle(x_part(z)).f; }

  /// [g(x); h(x) - s]; slack rows are computed arithmetically from the same h.
  Vector combined_eq(const Vector& z);

  long eval_count() const { return eval_count_; }

  /// Fresh bundles beyond this count raise BudgetExhausted.
  void set_budget(long max_evals) { budget_ = max_evals; }
  long budget() const { return budget_; }

  void set_observer(EvaluationObserver observer) { observer_ = std::move(observer); }
  const EvaluationObserver& observer() const { return observer_; }

  /// Number of cached bundles retained (at least 1).
  void set_cache_capacity(std::size_t capacity);

 private:
  ProblemSpec spec_;
  Vector lower_;
  Vector upper_;
  Vector z0_;
  long eval_count_ = 0;
  long budget_ = kUnlimited;
  std::size_t cache_capacity_ = 64;
  std::deque<std::pair<Vector, Evaluation>> cache_;
  EvaluationObserver observer_;
};

StandardForm to_standard_form(ProblemSpec spec);

/// ||G(z)||_inf plus the inf-norm of the box violation of z.
double infeasibility(StandardForm& sf, const Vector& z);

/// Violation of the original problem at x given its bundle: max of |g|,
/// inequality bound violation and box violation.
double constraint_violation(const ProblemSpec& spec, const Vector& x, const Evaluation& value);

struct NoiseModel {
  double magnitude = 0.0;
  std::uint64_t seed = 0;
};

/// Wraps every callback as (1 + magnitude * xi) * value with a fresh standard
/// normal xi per scalar output. The generator state is shared by the wrapped
/// callbacks and owned by the returned spec.
ProblemSpec apply_noise(const ProblemSpec& spec, const NoiseModel& model);

}  // namespace dfnlp
