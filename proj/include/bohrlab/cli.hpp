#pragma once

// Command-line front end: option parsing, run configuration, and JSON/CSV
// emission for every subcommand.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bohrlab/serialize.hpp"

namespace bohrlab {

/// Everything that determines a run's primary output.
struct RunConfig {
  std::string command;  // e.g. "bound"
  std::string action;   // e.g. "jsum"; empty for flat commands
  std::vector<int> m{2};
  std::vector<int> n{2};
  std::string p = "2";
  std::string q = "2";
  std::string set = "lambda";
  int k = 1;
  std::string beta_override;
  std::string poly_path;
  std::string series_path;
  bool majorant = false;
  std::string signs;
  double a = 0.5;
  int degree = 12;
  int restarts = 64;
  int max_iters = 500;
  std::size_t budget = 60;
  int samples = 1000;
  double tol = 1e-3;
  int mmax = 4;
  std::vector<int> n_grid{2, 4, 8, 16};
  std::string kind = "envelope";
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string format = "json";
  std::string output;
  double slack = 1.05;
};

Json to_json(const RunConfig& cfg);

/// Parses argv, runs the subcommand and writes its artifact. Returns 0 on
/// success, 2 on invalid input, 3 on an exhausted budget, 1 otherwise.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bohrlab
