#include "dfnlp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace dfnlp {

bool solved(double f, double f_opt, double infeas, double feas_cut) {
  if (!std::isfinite(f) || !std::isfinite(infeas)) return false;
  return f - f_opt <= 1e-2 * std::max(1.0, std::abs(f_opt)) && infeas < feas_cut;
}

std::vector<SuiteRow> run_suite(const std::vector<std::string>& ids, const SolverOptions& opts,
                                const std::optional<NoiseModel>& noise, int repeats, std::uint64_t master_seed,
                                double feas_cut) {
  if (repeats < 1) throw Error("run_suite: repeats must be at least 1");
  std::vector<SuiteRow> rows;
  for (const std::string& id : ids) {
    const BenchProblem problem = hs_problem(id);
    for (int r = 0; r < repeats; ++r) {
      SuiteRow row;
      row.id = id;
      row.dim = problem.dim;
      row.seed = master_seed + static_cast<std::uint64_t>(r);

      SolverOptions run_opts = opts;
      run_opts.seed = row.seed;
      ProblemSpec spec = problem.spec;
      if (noise && noise->magnitude > 0.0) {
        spec = apply_noise(problem.spec, NoiseModel{noise->magnitude, row.seed});
        run_opts.noisy = true;
      }

      const auto t0 = std::chrono::steady_clock::now();
      try {
        const SolveResult res = solve(spec, run_opts);
        row.evals = res.eval_count;
        row.status = res.status;
        if (res.x_star.allFinite() && res.x_star.size() == problem.dim) {
          // Score with the noiseless callbacks.
          StandardForm clean(problem.spec);
          const Evaluation& e = clean.bundle(res.x_star);
          row.objective = e.f;
          row.infeasibility = constraint_violation(problem.spec, res.x_star, e);
        } else {
          row.objective = std::numeric_limits<double>::quiet_NaN();
          row.infeasibility = std::numeric_limits<double>::infinity();
        }
      } catch (const Error&) {
        row.status = SolveStatus::numerical_failure;
        row.objective = std::numeric_limits<double>::quiet_NaN();
        row.infeasibility = std::numeric_limits<double>::infinity();
      }
      row.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      row.solved = solved(row.objective, problem.f_opt, row.infeasibility, feas_cut);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<NoiseReport> summarize(const std::vector<SuiteRow>& rows, double feas_cut) {
  std::vector<NoiseReport> out;
  std::vector<double> eval_sum, obj_sum;
  for (const SuiteRow& row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const NoiseReport& r) { return r.id == row.id; });
    if (it == out.end()) {
      out.push_back(NoiseReport{row.id});
      eval_sum.push_back(0.0);
      obj_sum.push_back(0.0);
      it = out.end() - 1;
    }
    const auto k = static_cast<std::size_t>(it - out.begin());
    ++it->runs;
    if (!(row.infeasibility < feas_cut) || !std::isfinite(row.objective)) {
      ++it->fail_count;
      continue;
    }
    eval_sum[k] += static_cast<double>(row.evals);
    obj_sum[k] += row.objective;
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    const int ok = out[k].runs - out[k].fail_count;
    out[k].mean_evals = ok > 0 ? eval_sum[k] / ok : std::numeric_limits<double>::quiet_NaN();
    out[k].mean_objective = ok > 0 ? obj_sum[k] / ok : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<SuiteRow>& rows) {
  out << "id,dim,evals,objective,infeasibility,time_ms,solved,seed\n";
  out << std::setprecision(12);
  for (const SuiteRow& r : rows) {
    out << r.id << ',' << r.dim << ',' << r.evals << ',' << r.objective << ',' << r.infeasibility << ','
        << std::fixed << std::setprecision(3) << r.time_ms << std::defaultfloat << std::setprecision(12) << ','
        << (r.solved ? "true" : "false") << ',' << r.seed << '\n';
  }
}

void write_report_csv(std::ostream& out, const std::vector<NoiseReport>& reports) {
  out << "id,runs,fail_count,mean_evals,mean_objective\n";
  out << std::setprecision(12);
  for (const NoiseReport& r : reports) {
    out << r.id << ',' << r.runs << ',' << r.fail_count << ',' << r.mean_evals << ',' << r.mean_objective << '\n';
  }
}

}  // namespace dfnlp
