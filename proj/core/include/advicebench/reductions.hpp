#pragma once

#include "advicebench/aoc_problems.hpp"

namespace advicebench {

// Length-preserving reduction from weighted minASGk to a minimization
// graph/set problem. The oracle knows the hidden string x.
//
// Side advice layouts (w = bits_for_count(n + 1), indices are 1-based and
// 0 means "none"):
//   VertexCover:   idx of the 1-vertex the target algorithm rejected (w).
//   CycleFinding:  flag |x|_1 <= 2 (1); if set, the two 1-positions (2w).
//   DominatingSet, SetCover:
//                  flag |x|_1 = 0 (1); flag target accepted v_max (1);
//                  if not accepted, an accepted 0-position (w) and max (w).
struct ReductionResult {
  Instance transformed;
  BitString x;           // hidden string of the source
  int g_budget = 0;      // most side-advice bits the back map reads
  // The target instance has no feasible output (cycle finding with
  // |x|_1 <= 2); the back map then ignores the target output.
  bool degenerate = false;
};

ReductionResult reduce_asg(const Instance& source, Problem target);

// Oracle half of the back map.
void write_side_advice(const ReductionResult& result,
                       const BitString& target_output, AdviceTape& side);

// Algorithm half: target output + side advice -> source output.
BitString back_map(const ReductionResult& result,
                   const BitString& target_output, AdviceTape& side);

struct ReductionVerdict {
  bool passed = false;
  BitString source_output;
  double alg1 = 0;
  double alg2 = 0;
  double opt1 = 0;
  double opt2 = 0;
  std::size_t side_bits = 0;
};

// Checks ALG1 <= ALG2 + OPT1 and OPT1 >= OPT2, or ALG1 = OPT1. Throws
// ReductionError when the reconstructed source output is infeasible.
ReductionVerdict verify_reduction(const Instance& source,
                                  const Outcome& target_run,
                                  const ReductionResult& result);

}  // namespace advicebench
