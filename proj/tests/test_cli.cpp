#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dfnlp/types.hpp"
#include "dfnlp_cli/cli.hpp"

using dfnlp::cli::CliConfig;

namespace {

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "dfnlp");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  return dfnlp::cli::main_entry(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, BenchSingleId) {
  CliConfig c;
  c.command = "bench";
  c.ids = {"HS40"};
  c.tol = 1e-4;
  std::ostringstream out, err;
  EXPECT_EQ(dfnlp::cli::run(c, out, err), 0);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "id,dim,evals,objective,infeasibility,time_ms,solved,seed");
  EXPECT_NE(l[1].find("HS40,4,"), std::string::npos);
  EXPECT_NE(l[1].find(",true,"), std::string::npos);
}

TEST(Cli, NoiseRunsAreReproducible) {
  CliConfig c;
  c.command = "noise";
  c.ids = {"HS40"};
  c.repeats = 5;
  c.seed = 7;
  auto strip_time = [](const std::string& csv) {
    std::string out;
    for (const std::string& l : lines(csv)) {
      // Drop the time_ms column (6th field).
      std::vector<std::string> f;
      std::istringstream in(l);
      for (std::string x; std::getline(in, x, ',');) f.push_back(x);
      if (f.size() > 5) f.erase(f.begin() + 5);
      for (const auto& x : f) out += x + ",";
      out += "\n";
    }
    return out;
  };
  std::ostringstream a, b, err;
  EXPECT_EQ(dfnlp::cli::run(c, a, err), 0);
  EXPECT_EQ(dfnlp::cli::run(c, b, err), 0);
  EXPECT_EQ(strip_time(a.str()), strip_time(b.str()));
  EXPECT_EQ(lines(a.str()).size(), 6u);
}

TEST(Cli, TumorWritesTraceWithinBudget) {
  const std::string trace = ::testing::TempDir() + "dfnlp_tumor_trace.csv";
  const std::string result = ::testing::TempDir() + "dfnlp_tumor_result.csv";
  CliConfig c;
  c.command = "tumor";
  c.max_evals = 200;
  c.trace = true;
  c.trace_path = trace;
  c.output_path = result;
  std::ostringstream out, err;
  dfnlp::cli::run(c, out, err);
  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "eval_index,objective,infeasibility");
  int rows = 0;
  for (std::string l; std::getline(in, l);) ++rows;
  EXPECT_GT(rows, 0);
  EXPECT_LE(rows, 200);
  std::ifstream res(result);
  std::getline(res, header);
  EXPECT_EQ(header, "evals,objective,infeasibility,status,t1,t2,t3,t4,a1,a2,a3,a4");
  std::remove(trace.c_str());
  std::remove(result.c_str());
}

TEST(Cli, SolveDemoPrintsOuterTrace) {
  CliConfig c;
  c.command = "solve-demo";
  std::ostringstream out, err;
  EXPECT_EQ(dfnlp::cli::run(c, out, err), 0);
  EXPECT_EQ(lines(out.str()).front(), "outer,objective,infeasibility,stationarity,rho,delta,restart,evals");
  EXPECT_NE(err.str().find("HS40"), std::string::npos);
}

TEST(Cli, UnknownCommandThrows) {
  CliConfig c;
  c.command = "plot";
  std::ostringstream out, err;
  EXPECT_THROW(dfnlp::cli::run(c, out, err), dfnlp::Error);
}

TEST(Cli, BadFlagExitsTwo) {
  EXPECT_EQ(run_args({"bench", "--frobnicate"}), 2);
  EXPECT_EQ(run_args({"bench", "--repeats", "0"}), 2);
  EXPECT_EQ(run_args({}), 2);
}

TEST(Cli, UnknownIdExitsTwo) {
  EXPECT_EQ(run_args({"bench", "--ids", "HS40,HS999"}), 2);
}

TEST(Cli, ArgvBench) {
  EXPECT_EQ(run_args({"bench", "--ids", "HS78", "--tol", "1e-4", "--out", ::testing::TempDir() + "dfnlp_b.csv"}), 0);
  std::remove((::testing::TempDir() + "dfnlp_b.csv").c_str());
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run_args({"--help"}), 0);
}
