#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dfnlp/alm.hpp"
#include "dfnlp/problem.hpp"

namespace dfnlp {

struct BenchProblem {
  std::string id;
  ProblemSpec spec;
  double f_opt = 0.0;
  int dim = 0;
  Vector x_ref;  // published optimal point (polished)
};

/// All supported Hock-Schittkowski ids, in suite order.
const std::vector<std::string>& hs_ids();

/// The subset that must be solved noiselessly.
const std::vector<std::string>& hs_required_ids();

/// Throws Error("unknown problem id: ...") for anything outside hs_ids().
BenchProblem hs_problem(const std::string& id);

/// f - f_opt <= 1e-2 max(1, |f_opt|) and infeas < feas_cut.
bool solved(double f, double f_opt, double infeas, double feas_cut = 1e-4);

struct SuiteRow {
  std::string id;
  int dim = 0;
  long evals = 0;
  double objective = 0.0;
  double infeasibility = 0.0;
  double time_ms = 0.0;
  bool solved = false;
  std::uint64_t seed = 0;
  SolveStatus status = SolveStatus::max_outer;
};

struct NoiseReport {
  std::string id;
  int runs = 0;
  int fail_count = 0;  // infeasible returns
  double mean_evals = 0.0;
  double mean_objective = 0.0;  // over feasible runs
};

/// Solves every id `repeats` times. Repeat r uses seed master_seed + r for the
/// noise stream. Final infeasibility is measured with the noiseless callbacks.
/// A failing solve is recorded as an unsolved row; the suite carries on.
std::vector<SuiteRow> run_suite(const std::vector<std::string>& ids, const SolverOptions& opts,
                                const std::optional<NoiseModel>& noise, int repeats,
                                std::uint64_t master_seed = 0, double feas_cut = 1e-4);

/// Per-id aggregation of suite rows, in first-appearance order.
std::vector<NoiseReport> summarize(const std::vector<SuiteRow>& rows, double feas_cut = 1e-4);

/// Header: id,dim,evals,objective,infeasibility,time_ms,solved,seed
void write_csv(std::ostream& out, const std::vector<SuiteRow>& rows);

/// Header: id,runs,fail_count,mean_evals,mean_objective
void write_report_csv(std::ostream& out, const std::vector<NoiseReport>& reports);

}  // namespace dfnlp
