#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dfnlp/bench.hpp"
#include "dfnlp/sqp.hpp"

using namespace dfnlp;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

bool positive_definite(const Matrix& H) {
  Eigen::LLT<Matrix> llt(H);
  return llt.info() == Eigen::Success;
}

}  // namespace

TEST(Bfgs, FixedPointWhenSecantHolds) {
  Matrix H(2, 2);
  H << 2, 0.5, 0.5, 1;
  const Vector s = vec({0.3, -0.7});
  const Matrix H2 = bfgs_update(H, H * s, s);
  EXPECT_LT((H2 - H).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Bfgs, HandExample) {
  const Matrix H2 = bfgs_update(Matrix::Identity(3, 3), vec({2, 0, 0}), vec({1, 0, 0}));
  Matrix expected = Matrix::Identity(3, 3);
  expected(0, 0) = 2.0;
  EXPECT_LT((H2 - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Bfgs, NegativeCurvatureSkips) {
  const Matrix H = Matrix::Identity(2, 2);
  EXPECT_EQ(bfgs_update(H, vec({-1, 0}), vec({1, 0})), H);
  EXPECT_EQ(bfgs_update(H, vec({0, 1}), vec({1, 0})), H);
}

TEST(Bfgs, PositiveDefiniteFuzz) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_int_distribution<int> dim_pick(1, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = dim_pick(rng);
    Matrix B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B(i, j) = N(rng);
    Matrix H = B * B.transpose() + 1e-3 * Matrix::Identity(n, n);
    // A chain of updates, each with t's > 0 enforced by flipping t.
    for (int step = 0; step < 5; ++step) {
      Vector s(n), t(n);
      for (int j = 0; j < n; ++j) s[j] = N(rng), t[j] = N(rng);
      if (t.dot(s) <= 0.0) t = -t;
      if (t.dot(s) <= 1e-8 * t.norm() * s.norm()) continue;
      H = bfgs_update(H, t, s);
      ASSERT_TRUE(positive_definite(H)) << "trial " << trial << " step " << step;
      ASSERT_LE((H - H.transpose()).cwiseAbs().maxCoeff(), 1e-12 * (1 + H.cwiseAbs().maxCoeff()));
      // Secant condition of the accepted update.
      ASSERT_LE((H * s - t).norm(), 1e-6 * (1 + t.norm() + H.norm() * s.norm()));
    }
  }
}

TEST(LineSearch, AcceptsImprovingTarget) {
  const MeritFn L = [](const Vector& z) { return (z - vec({1, 1})).squaredNorm(); };
  const auto r = line_search(L, vec({0, 0}), vec({1, 1}), 3);
  EXPECT_EQ(r.z, vec({1, 1}));
  EXPECT_EQ(r.value, 0.0);
}

TEST(LineSearch, BisectsToMidpoint) {
  const MeritFn L = [](const Vector& z) { return z.squaredNorm(); };
  const auto r = line_search(L, vec({1}), vec({-1}), 2);
  EXPECT_EQ(r.z[0], 0.0);
}

TEST(LineSearch, NoBisectionReturnsBetterEndpoint) {
  const MeritFn L = [](const Vector& z) { return z.squaredNorm(); };
  EXPECT_EQ(line_search(L, vec({1}), vec({-2}), 0).z[0], 1.0);
  EXPECT_EQ(line_search(L, vec({1}), vec({-0.5}), 0).z[0], -0.5);
}

TEST(LineSearch, NeverWorseThanEndpoints) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector c = vec({N(rng), N(rng)});
    const MeritFn L = [&](const Vector& z) { return std::cos(3 * z[0]) + (z - c).squaredNorm(); };
    const Vector a = vec({N(rng), N(rng)}), b = vec({N(rng), N(rng)});
    const auto r = line_search(L, a, b, 3);
    EXPECT_LE(r.value, std::min(L(a), L(b)));
    EXPECT_EQ(r.value, L(r.z));
  }
}

TEST(LineSearch, NonFiniteCandidateDiscarded) {
  const MeritFn L = [](const Vector& z) {
    return z[0] < -0.5 ? std::numeric_limits<double>::quiet_NaN() : z[0] * z[0];
  };
  const auto r = line_search(L, vec({1}), vec({-1}), 1);
  EXPECT_EQ(r.z[0], 0.0);
}

TEST(RunInner, ExactModelOnQuadratic) {
  ProblemSpec spec;
  spec.n = 2;
  Matrix Q(2, 2);
  Q << 3, 1, 1, 2;
  const Vector c = vec({-1, 2});
  spec.objective = [&](const Vector& x) { return 0.5 * x.dot(Q * x) + c.dot(x); };
  spec.box_lower = Vector::Constant(2, -kInfinity);
  spec.box_upper = Vector::Constant(2, kInfinity);
  spec.x0 = vec({0.5, 0.5});
  StandardForm sf(spec);
  const MeritFn L = [&](const Vector& z) { return sf.objective(z); };
  StepController ctrl;
  ctrl.delta = ctrl.delta0 = 1e-8;
  InnerOptions opts;
  opts.tol = 1e-12;
  const InnerResult r = run_inner(sf, L, sf.z0(), Matrix(0, 2), Vector(0), Q, ctrl, opts, {sf.z0(), {}});
  const Vector minimizer = Q.ldlt().solve(-c);
  EXPECT_LT((r.z_next - minimizer).lpNorm<Eigen::Infinity>(), 1e-6);
  // The first step alone lands within the gradient error of the minimizer.
  ASSERT_GE(r.state.L_values.size(), 2u);
  EXPECT_NEAR(r.state.L_values[1], spec.objective(minimizer), 1e-10);
}

TEST(RunInner, IteratesKeepLinearizedEqualities) {
  BenchProblem p = hs_problem("HS40");
  StandardForm sf(p.spec);
  const Vector z_k = sf.z0();
  StepController ctrl;
  ctrl.delta = ctrl.delta0 = 1e-6;
  const Matrix J = forward_jacobian([&](const Vector& z) { return sf.combined_eq(z); }, z_k, ctrl.delta);
  const MeritFn L = [&](const Vector& z) { return sf.objective(z); };
  InnerOptions opts;
  std::vector<Vector> seen;
  opts.on_iterate = [&](const Vector& z) { seen.push_back(z); };
  // Start on the linearization's feasible plane.
  const Vector G = sf.combined_eq(z_k);
  const Vector z0 = z_k - J.transpose() * (J * J.transpose()).ldlt().solve(G);
  const Vector shift = J * (z0 - z_k);
  const InnerResult r = run_inner(sf, L, z_k, J, shift, Matrix::Identity(4, 4), ctrl, opts, {z0, {}});
  ASSERT_FALSE(seen.empty());
  for (const Vector& z : seen) {
    EXPECT_LE((J * (z - z_k) - shift).lpNorm<Eigen::Infinity>(), 1e-6 * (1 + shift.norm()));
  }
  for (std::size_t i = 1; i < r.state.L_values.size(); ++i) {
    EXPECT_LE(r.state.L_values[i], r.state.L_values[i - 1]);
  }
}

TEST(RunInner, NoisyProbesPopulateBestFeasible) {
  BenchProblem p = hs_problem("HS11");
  // A strictly feasible start with the slack on h(x0).
  p.spec.x0 = vec({1.0, 2.0});
  p.spec.ineq_guess = p.spec.ineq_con(p.spec.x0);
  const ProblemSpec noisy = apply_noise(p.spec, NoiseModel{1e-4, 1});
  StandardForm sf(noisy);
  const Vector z_k = sf.z0();
  StepController ctrl;
  ctrl.delta = ctrl.delta0 = 1e-2;
  const Matrix J = forward_jacobian([&](const Vector& z) { return sf.combined_eq(z); }, z_k, ctrl.delta);
  const MeritFn L = [&](const Vector& z) { return sf.objective(z); };
  InnerOptions opts;
  opts.feas_tol = 5e-2;
  const InnerResult r = run_inner(sf, L, z_k, J, Vector::Zero(1), Matrix::Identity(3, 3), ctrl, opts, {z_k, {}});
  ASSERT_TRUE(r.state.best_feasible.has_value());
  EXPECT_LT(sf.combined_eq(r.state.best_feasible->z).lpNorm<Eigen::Infinity>(), opts.feas_tol);
}
