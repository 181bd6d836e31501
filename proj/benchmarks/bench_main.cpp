#include <benchmark/benchmark.h>

#include <random>

#include "dfnlp/alm.hpp"
#include "dfnlp/bench.hpp"
#include "dfnlp/numdiff.hpp"
#include "dfnlp/pharmaco.hpp"
#include "dfnlp/subsolver.hpp"

using namespace dfnlp;

namespace {

// Strictly convex QP with one equality through the interior start.
QpProblem random_qp(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Matrix B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = U(rng);
  QpProblem qp;
  qp.H = B * B.transpose() + Matrix::Identity(n, n);
  qp.grad = Vector(n);
  for (int i = 0; i < n; ++i) qp.grad[i] = U(rng);
  qp.A = Matrix::Ones(1, n);
  qp.start = Vector::Zero(n);
  qp.center = qp.start;
  qp.b = qp.A * qp.start;
  qp.lower = Vector::Constant(n, -1.0);
  qp.upper = Vector::Constant(n, 1.0);
  return qp;
}

void BM_SolveQp(benchmark::State& state) {
  const QpProblem qp = random_qp(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(solve_qp(qp).z);
}
BENCHMARK(BM_SolveQp)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_ForwardGradient(benchmark::State& state) {
  const BenchProblem p = hs_problem("HS38");
  for (auto _ : state) benchmark::DoNotOptimize(forward_gradient(p.spec.objective, p.spec.x0, 1e-6).grad);
}
BENCHMARK(BM_ForwardGradient);

void BM_TumorSimulate(benchmark::State& state) {
  const TumorParams params;
  DoseSchedule sched;
  sched.times = Vector(4);
  sched.amounts = Vector::Constant(4, 0.5);
  sched.times << 20.0, 60.0, 100.0, 140.0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(params, sched).tumor_size);
}
BENCHMARK(BM_TumorSimulate);

void BM_SolveHs(benchmark::State& state, const char* id) {
  const BenchProblem p = hs_problem(id);
  for (auto _ : state) benchmark::DoNotOptimize(solve(p.spec).objective);
}
BENCHMARK_CAPTURE(BM_SolveHs, HS40, "HS40");
BENCHMARK_CAPTURE(BM_SolveHs, HS80, "HS80");
BENCHMARK_CAPTURE(BM_SolveHs, HS38, "HS38");

}  // namespace

BENCHMARK_MAIN();
