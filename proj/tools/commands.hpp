#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "output.hpp"

namespace airyspec::cli {

// Invalid flag values; reported with exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double min = 0;
  double max = 1;
  int count = 2;
  std::vector<double> points() const;
};

// "min:max:count", count >= 2, min < max.
GridSpec parse_grid(const std::string& text);

// "1,2,3" -> {1, 2, 3}
std::vector<int> parse_int_list(const std::string& text);

struct RunConfig {
  std::string command;
  std::optional<double> c, s, alpha;
  std::vector<int> k{1};
  std::vector<int> j{0};
  int beta = 2;
  int n = 10;
  std::string kind = "finite";
  std::optional<GridSpec> grid, xi_grid;
  std::string out = "-";
  Format format = Format::csv;
  std::optional<double> tol;
  int threads = 1;
  bool golden_only = false;
  bool perturb_lambda0 = false;
};

// Runs body(i) for i in [0, count) on up to `threads` workers.  The first
// exception thrown by any worker is rethrown after all have stopped.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

Table cmd_spectrum(const RunConfig& cfg);
Table cmd_eigfun(const RunConfig& cfg);
Table cmd_cdf(const RunConfig& cfg);
Table cmd_pdf(const RunConfig& cfg);
Table cmd_table(const RunConfig& cfg);
Table cmd_beam(const RunConfig& cfg);

// Prints one line per check to stdout; returns the number of failures.
int cmd_selftest(const RunConfig& cfg);

}  // namespace airyspec::cli
