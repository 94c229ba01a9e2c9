#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "advicebench/aoc_problems.hpp"
#include "advicebench/rational.hpp"
#include "advicebench/rng.hpp"

namespace advicebench {

// Weight a^q with q = numerator / 2^log2_denominator. Only q is stored;
// a can be far beyond double range.
struct ExponentWeight {
  std::int64_t numerator = 0;
  int log2_denominator = 0;

  Rational value() const;
  double as_double() const;
  // Exact comparison of exponents.
  friend bool operator<(const ExponentWeight& a, const ExponentWeight& b);
  friend bool operator==(const ExponentWeight& a, const ExponentWeight& b);
};

// q_1 = 1/2; q_i = q_{i-1} + 2^-i if x_{i-1} = 1, else q_{i-1} - 2^-i. All
// exponents share the denominator 2^n.
std::vector<ExponentWeight> string_guessing_weights(const BitString& x);

// minASG instance for x whose request weights hold the exponents q_i.
Instance string_guessing_instance(const BitString& x);

// log2 of sum_i a^{q_i} over the ones of `selected`; -inf if empty.
double log2_weight_sum(const std::vector<ExponentWeight>& q,
                       const BitString& selected, double log2_a);

struct LowerBoundWitness {
  BitString x;            // input on which the algorithm fails
  BitString colliding_x;  // input with the same advice class
  int diverge_position = 0;  // first index where they differ (0-based)
  bool infeasible = false;
  double log2_ratio = 0.0;  // log2(ALG/OPT) on x when feasible
  std::string advice_class;
};

// Runs `scheme` on every n-bit string with at least one 1, truncating its
// advice to `budget_bits`, and turns the first advice collision into a
// witness. Throws InapplicableError when all inputs get distinct advice.
LowerBoundWitness string_guessing_verify(const AdviceScheme& scheme, int n,
                                         int budget_bits, double log2_a);

// Reads no advice and answers 0 every round.
AdviceScheme guess_zero_scheme();
// Reads x_i from the tape in round i.
AdviceScheme verbatim_guess_scheme();

// Nested prefixes sigma_1..sigma_n in which any feasible output accepts at
// most one request; request i has weight f^i.
//   IndependentSet: a clique.  Clique: an edgeless graph.
//   Matching: a star.          DisjointPath: r_i = <v_i .. v_{i+n}>.
std::vector<Instance> geometric_family(Problem problem, int n, double f);

struct PrefixWitness {
  int shorter = 0;  // prefix lengths sharing an advice class
  int longer = 0;
  int erring = 0;   // prefix on which the ratio is measured
  bool infeasible = false;
  bool unbounded = false;  // ALG accepted nothing
  double log2_ratio = 0.0;
  std::string advice_class;
};

// floor(log2 n) - 1, the advice budget of the prefix-family verifier.
int geometric_family_budget(int n);

PrefixWitness geometric_family_verify(Problem problem, int n, double f,
                                      const AdviceScheme& scheme,
                                      int budget_bits);

// Probabilistic star adversary with k = 2c - 1 rounds.
struct StarExpectations {
  int k = 0;
  std::vector<Rational> distribution;  // Pr(X = j), j = 1..k
  Rational e_opt;
  std::vector<Rational> e_det;  // e_det[j-1] = Pr(X >= j) * 2^j
  bool identities_hold() const;
};

StarExpectations star_expectations(const Rational& c);

// Draws the number of edges X.
int sample_star_length(int k, SplitMix64& rng);

struct StarMonteCarlo {
  std::int64_t samples = 0;
  double mean_opt = 0;
  double se_opt = 0;
  std::vector<double> mean_det;
  std::vector<double> se_det;
};

StarMonteCarlo star_monte_carlo(const Rational& c, std::int64_t samples,
                                std::uint64_t seed);

// Matching instance: star with edges of weight 2^1 .. 2^x.
Instance star_instance(int x);
// Deterministic strategy that accepts the j-th edge if it arrives.
AdviceScheme accept_jth_scheme(int j);
// Accepts the last edge; the oracle writes X self-delimited.
AdviceScheme accept_last_scheme();

}  // namespace advicebench
