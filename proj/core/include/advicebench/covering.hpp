#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "advicebench/aoc_problems.hpp"
#include "advicebench/bitstring.hpp"
#include "advicebench/rational.hpp"

namespace advicebench {

// Largest n for which build_family_greedy enumerates {0,1}^n.
inline constexpr int kMaxFamilyLength = 20;

enum class Direction { kMin, kMax };

std::string_view to_string(Direction d);
Direction parse_direction(std::string_view text);
inline Direction direction_of(Problem p) {
  return is_minimization(p) ? Direction::kMin : Direction::kMax;
}

// A set of n-bit strings such that every x has a member y with x ⊑ y and
//   Min: ones(y) <= c * ones(x)
//   Max: zeros(y) >= zeros(x) / c
struct CoveringFamily {
  int n = 0;
  Rational c{1};
  Direction direction = Direction::kMin;
  std::vector<BitString> members;  // sorted by numeric value
  int index_width = 0;
};

// log2(1 + (c-1)^(c-1) / c^c) * n, with (c-1)^(c-1) = 1 at c = 1.
double b_bound(int n, const Rational& c);

// True if y covers x under the family's cost/profit bound.
bool dominates(int n, const Rational& c, Direction d, const BitString& x,
               const BitString& y);

CoveringFamily build_family_greedy(int n, const Rational& c, Direction d);

// Exhaustive check of the covering property over all 2^n strings.
bool verify_family(const CoveringFamily& family);

// Lowest-index member covering x.
std::pair<int, BitString> lookup_cover(const CoveringFamily& family,
                                       const BitString& x);

// Process-wide cache of greedy families; safe to call concurrently.
std::shared_ptr<const CoveringFamily> cached_family(int n, const Rational& c,
                                                    Direction d);

// Covering advice for an unweighted AOC problem. The oracle writes the
// member index in index_width bits. With `known_n` unset the oracle first
// writes n self-delimited so the algorithm can pick the family.
AdviceScheme covering_scheme(const Rational& c, Direction d,
                             std::optional<int> known_n = std::nullopt);

// Oracle writes the lookup index of `optimal_x`, the algorithm replays the
// member bit by bit. The outcome is scored unweighted.
Outcome run_unweighted_aoc(const Instance& instance,
                           const CoveringFamily& family,
                           const BitString& optimal_x, AdviceTape& tape);

}  // namespace advicebench
