#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace advicebench {

// Result of one simulation. `ratio` is OPT/ALG for maximization and
// ALG/OPT for minimization, 1 when both are 0.
struct RunReport {
  std::string problem;
  int n = 0;
  std::string algorithm;
  std::map<std::string, std::string> params;
  bool alg_feasible = true;
  double alg_score = 0.0;
  double opt_score = 0.0;
  double ratio = 1.0;
  double additive_alpha = 0.0;
  std::size_t bits_read = 0;
  double advice_bound = 0.0;
  std::int64_t runtime_ms = 0;
  std::string output;  // output bits or the assignment, for debugging
  std::string tape_hex;
  std::uint64_t run_id = 0;
  // Broken runtime invariants; a non-empty list fails the run.
  std::vector<std::string> violations;

  bool ok() const { return alg_feasible && violations.empty(); }
};

double competitive_ratio(bool minimize, double alg, double opt);

}  // namespace advicebench
