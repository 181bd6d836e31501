#include "dfnlp_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "dfnlp/alm.hpp"
#include "dfnlp/bench.hpp"
#include "dfnlp/pharmaco.hpp"

namespace dfnlp::cli {

namespace {

// Opens --out, or hands back `fallback` when no path was given.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error("cannot open output file: " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

double pick(double v, double fallback) { return v > 0.0 ? v : fallback; }

SolverOptions base_options(const CliConfig& c, double tol, double feas_tol) {
  SolverOptions o;
  o.tol = pick(c.tol, tol);
  o.feas_tol = pick(c.feas_tol, feas_tol);
  o.seed = c.seed;
  if (c.max_evals > 0) o.max_evals = c.max_evals;
  return o;
}

int run_bench(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> ids = c.ids.empty() ? hs_ids() : c.ids;
  const SolverOptions opts = base_options(c, 1e-4, 1e-4);
  const int repeats = c.repeats > 0 ? c.repeats : 1;
  std::optional<NoiseModel> noise;
  if (c.noise > 0.0) noise = NoiseModel{c.noise, c.seed};
  const auto rows = run_suite(ids, opts, noise, repeats, c.seed, opts.feas_tol);
  Output o(c.output_path, out);
  write_csv(o.get(), rows);

  const auto& required = hs_required_ids();
  int solved_count = 0;
  bool ok = true;
  for (const SuiteRow& r : rows) {
    solved_count += r.solved ? 1 : 0;
    if (!r.solved && std::find(required.begin(), required.end(), r.id) != required.end()) {
      err << "required problem not solved: " << r.id << " (seed " << r.seed << ")\n";
      ok = false;
    }
  }
  const bool full_suite = std::all_of(hs_ids().begin(), hs_ids().end(), [&](const std::string& id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
  });
  if (full_suite && repeats == 1 && solved_count < 11) {
    err << "only " << solved_count << " of " << rows.size() << " problems solved\n";
    ok = false;
  }
  return ok ? 0 : 1;
}

int run_noise(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> ids = c.ids.empty() ? std::vector<std::string>{"HS40", "HS80", "HS11"} : c.ids;
  const SolverOptions opts = base_options(c, 1e-3, 1e-4);
  const int repeats = c.repeats > 0 ? c.repeats : 50;
  const NoiseModel noise{pick(c.noise, 1e-4), c.seed};
  const auto rows = run_suite(ids, opts, noise, repeats, c.seed, opts.feas_tol);
  Output o(c.output_path, out);
  write_csv(o.get(), rows);

  bool ok = true;
  const auto reports = summarize(rows, opts.feas_tol);
  write_report_csv(err, reports);
  for (const NoiseReport& r : reports) {
    // At most 10% infeasible returns.
    if (10 * r.fail_count > r.runs) {
      err << "too many infeasible returns for " << r.id << ": " << r.fail_count << "/" << r.runs << "\n";
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

int run_tumor(const CliConfig& c, std::ostream& out, std::ostream& err) {
  SolverOptions opts = base_options(c, 1e-8, 1e-6);
  opts.max_evals = c.max_evals > 0 ? c.max_evals : 3000;
  // Budget-terminated. Passes served from the cache cost nothing, so bound them too.
  opts.max_outer = static_cast<int>(opts.max_evals);
  const ProblemSpec spec = tumor_problem();
  StandardForm sf(spec);

  std::unique_ptr<std::ofstream> trace;
  if (c.trace) {
    trace = std::make_unique<std::ofstream>(c.trace_path, std::ios::binary);
    if (!*trace) throw Error("cannot open trace file: " + c.trace_path);
    *trace << "eval_index,objective,infeasibility\n" << std::setprecision(12);
    sf.set_observer([&](const EvaluationRecord& rec) {
      *trace << rec.index << ',' << rec.value.f << ',' << constraint_violation(spec, rec.x, rec.value) << '\n';
    });
  }
  const SolveResult res = solve(sf, opts);
  sf.set_observer({});

  Output o(c.output_path, out);
  std::ostream& os = o.get();
  os << "evals,objective,infeasibility,status";
  for (int i = 0; i < spec.n / 2; ++i) os << ",t" << i + 1;
  for (int i = 0; i < spec.n / 2; ++i) os << ",a" << i + 1;
  os << '\n' << std::setprecision(12) << res.eval_count << ',' << res.objective << ',' << res.infeasibility << ','
     << to_string(res.status);
  for (Eigen::Index i = 0; i < res.x_star.size(); ++i) os << ',' << res.x_star[i];
  os << '\n';

  const bool ok = res.objective <= 3.0 && res.infeasibility <= 1e-6;
  if (!ok) err << "tumor run missed its targets (objective <= 3, infeasibility <= 1e-6)\n";
  return ok ? 0 : 1;
}

int run_demo(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const std::string id = c.ids.empty() ? "HS40" : c.ids.front();
  const BenchProblem p = hs_problem(id);
  const SolveResult res = solve(p.spec, base_options(c, 1e-4, 1e-4));
  Output o(c.output_path, out);
  std::ostream& os = o.get();
  os << "outer,objective,infeasibility,stationarity,rho,delta,restart,evals\n" << std::setprecision(10);
  for (std::size_t k = 0; k < res.trace.size(); ++k) {
    const OuterRecord& r = res.trace[k];
    os << k << ',' << r.objective << ',' << r.infeasibility << ',' << r.stationarity << ',' << r.rho << ','
       << r.delta << ',' << to_string(r.restart) << ',' << r.evals << '\n';
  }
  err << id << ": " << to_string(res.status) << ", f = " << std::setprecision(10) << res.objective
      << ", infeasibility = " << res.infeasibility << ", evals = " << res.eval_count << '\n';
  return solved(res.objective, p.f_opt, res.infeasibility) ? 0 : 1;
}

}  // namespace

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (config.command == "bench") return run_bench(config, out, err);
  if (config.command == "noise") return run_noise(config, out, err);
  if (config.command == "tumor") return run_tumor(config, out, err);
  if (config.command == "solve-demo") return run_demo(config, out, err);
  throw Error("unknown command: " + config.command);
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Derivative-free constrained optimization: benchmark and experiment driver"};
  app.require_subcommand(1, 1);
  CliConfig config;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", config.tol, "Convergence tolerance (command default when omitted)");
    sub->add_option("--feas-tol", config.feas_tol, "Infeasibility tolerance");
    sub->add_option("--seed", config.seed, "Master seed");
    sub->add_option("--max-evals", config.max_evals, "Evaluation budget");
    sub->add_option("--out", config.output_path, "Output CSV path (default stdout)");
  };
  auto* bench = app.add_subcommand("bench", "Noiseless Hock-Schittkowski suite");
  add_common(bench);
  bench->add_option("--ids", config.ids, "Problem ids")->delimiter(',');
  bench->add_option("--repeats", config.repeats, "Repeats per problem")->check(CLI::PositiveNumber);
  bench->add_option("--noise", config.noise, "Multiplicative noise magnitude");

  auto* noise = app.add_subcommand("noise", "Noisy repeats of the Hock-Schittkowski suite");
  add_common(noise);
  noise->add_option("--ids", config.ids, "Problem ids")->delimiter(',');
  noise->add_option("--repeats", config.repeats, "Repeats per problem")->check(CLI::PositiveNumber);
  noise->add_option("--noise", config.noise, "Multiplicative noise magnitude");

  auto* tumor = app.add_subcommand("tumor", "Tumor dosing problem");
  add_common(tumor);
  tumor->add_flag("--trace", config.trace, "Write the per-evaluation trace");
  tumor->add_option("--trace-out", config.trace_path, "Trace CSV path");

  auto* demo = app.add_subcommand("solve-demo", "Solve one problem and print the outer-iteration trace");
  add_common(demo);
  demo->add_option("--ids", config.ids, "Problem id")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  config.command = app.get_subcommands().front()->get_name();
  for (const std::string& id : config.ids) {
    const auto& known = hs_ids();
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      std::cerr << "unknown problem id: " << id << "\n" << app.help();
      return 2;
    }
  }
  try {
    return run(config, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace dfnlp::cli
