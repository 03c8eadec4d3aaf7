#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "empathica/equilibria.hpp"

namespace empathica::cli {

struct RunConfig {
  std::string command;  // transform, classify, solve, ess, simulate, field, sweep, hierarchy
  std::string input;    // path or fixture name
  std::string out;      // empty: stdout (JSON reports, CSV for field/sweep)
  std::optional<std::array<double, 4>> lambda;  // l11 l12 l21 l22, overrides the file

  std::string protocol = "replicator";
  std::string schedule = "constant";  // or harmonic
  long steps = 100000;
  double rate = 0.01;
  std::optional<std::array<double, 2>> start;  // p1, p2; random from seed when unset
  std::uint64_t seed = 1;

  std::optional<int> grid;  // field: 21, sweep: 60
  Range range_l12{-1.0, 2.0};
  Range range_l21{-1.0, 2.0};

  double sigma = 1.0;
  double mu = 0.0;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> V;

  int kmax = 10;
  std::string svg;  // field: also write a phase portrait here
};

// Resolves a path, or a fixture name (with or without .json) in the fixture
// directory. EMPATHICA_FIXTURES overrides the built-in directory.
std::string resolve_input(const std::string& name);

// "lo:hi". Throws ParseError.
Range parse_range(const std::string& text);

// 0 on success, 1 on parse errors, 2 on precondition violations. Errors are
// reported as a single line on `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses command-line arguments into a RunConfig and runs it.
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace empathica::cli
