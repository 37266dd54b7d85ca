#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conc {

/// One CLI invocation, fully specified. Parameter ranges are validated before
/// any computation starts.
struct RunConfig {
  enum class Command { locate, verify, corollary2, lemma8, theorem9, ineq, counterexample };

  Command command = Command::locate;
  std::string input_path;
  std::string out_path = "-";

  double epsilon = 0.0;
  double p = 2.0;
  double eta = 0.0;
  int k = 0;
  int m = 0;
  int n = 0;

  std::uint64_t subset_cap = 4096;
  int random_subsets = 256;
  long long mc_samples = 2000;
  double mc_confidence = 0.99;
  std::uint64_t seed = 0;

  std::string suite;  // rx | bcl | lemma6
  long long trials = 100;
  std::vector<double> p_grid;
};

// Executes the command and writes the canonical JSON report. Returns 0 when
// every check passes, 1 on a verified mathematical-check failure, 2 on
// precondition or parse errors.
int run(const RunConfig& config);

}  // namespace conc
