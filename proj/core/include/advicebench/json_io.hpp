#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "advicebench/adversaries.hpp"
#include "advicebench/aoc_problems.hpp"
#include "advicebench/covering.hpp"
#include "advicebench/report.hpp"
#include "advicebench/scheduling.hpp"

namespace advicebench {

// Instance documents:
//   {"problem": "vertex_cover", "universe_size"?: u, "path_length"?: L,
//    "requests": [{"payload": P, "weight": 2.5 | "2.5"}]}
// with P one of
//   {"bit": 0|1}                 minasg
//   {"neighbors": [0, 3]}        vertex arrivals (earlier 0-based indices)
//   {"u": 1, "v": 2}             matching edges
//   {"start": 1, "end": 4}       disjoint path subpaths
//   {"elements": [1, 5]}         set cover subsets
// Malformed documents raise ContractError.
Instance instance_from_json(std::string_view text);
std::string instance_to_json(const Instance& instance);

struct SchedulingInstance {
  int machines = 0;
  std::optional<std::vector<double>> speeds;
  std::vector<double> sizes;  // filled when speeds are present
  std::vector<Job> jobs;
  Objective objective;
};

// {"machines": m, "speeds"?: [...], "jobs": [[w_1..w_m] | size, ...],
//  "objective": {"kind": "lp"|"minload", "p"?: number|"inf",
//                "direction": "min"|"max"}}
SchedulingInstance scheduling_from_json(std::string_view text);
std::string scheduling_to_json(const SchedulingInstance& instance);

std::string family_to_json(const CoveringFamily& family);
CoveringFamily family_from_json(std::string_view text);

std::string witness_to_json(const LowerBoundWitness& witness);
std::string witness_to_json(const PrefixWitness& witness);

std::string expectations_to_json(const StarExpectations& e,
                                 const std::optional<StarMonteCarlo>& mc);

// One JSON line, no trailing newline. alg_score is "inf" when infeasible;
// runtime_ms is left out unless include_timing is set, so that reports of
// identical runs compare byte for byte.
std::string report_to_json(const RunReport& report, bool include_timing);

}  // namespace advicebench
