#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dfnlp::cli {

// Negative numeric fields mean "use the command's default".
struct CliConfig {
  std::string command;  // bench | noise | tumor | solve-demo
  double tol = -1.0;
  double feas_tol = -1.0;
  std::uint64_t seed = 1;
  int repeats = -1;
  long max_evals = -1;
  double noise = -1.0;
  std::string output_path;  // empty: stdout
  std::vector<std::string> ids;
  bool trace = false;
  std::string trace_path = "tumor_trace.csv";
};

/// Runs one command. Returns 0 when its acceptance thresholds are met, 1
/// otherwise.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Bad flags print usage and return 2.
int main_entry(int argc, char** argv);

}  // namespace dfnlp::cli
