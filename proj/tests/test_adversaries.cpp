#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "advicebench/adversaries.hpp"
#include "advicebench/covering.hpp"
#include "advicebench/errors.hpp"
#include "advicebench/weighted_core.hpp"

using namespace advicebench;

namespace {

// Numerators of q_1..q_n over 2^n, straight from the recurrence.
std::vector<std::int64_t> q_numerators(const BitString& x) {
  const int n = x.size();
  std::vector<std::int64_t> q(n);
  q[0] = std::int64_t{1} << (n - 1);
  for (int i = 1; i < n; ++i) {
    const std::int64_t step = std::int64_t{1} << (n - 1 - i);
    q[i] = q[i - 1] + (x[i - 1] ? step : -step);
  }
  return q;
}

}  // namespace

TEST(StringGuessing, WeightsForOneZeroOne) {
  const auto q = string_guessing_weights(BitString::parse("101"));
  ASSERT_EQ(q.size(), 3u);
  EXPECT_EQ(q[0].value(), Rational(1, 2));
  EXPECT_EQ(q[1].value(), Rational(3, 4));
  EXPECT_EQ(q[2].value(), Rational(5, 8));
  // a = 256: a^q = 2^(8q).
  const double want[] = {16, 64, 32};
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(std::exp2(8 * q[i].as_double()), want[i]);
}

TEST(StringGuessing, AllZerosDecrease) {
  const auto q = string_guessing_weights(BitString(10));
  for (std::size_t i = 1; i < q.size(); ++i) EXPECT_TRUE(q[i] < q[i - 1]);
}

TEST(StringGuessing, MatchesRecurrenceAndIsCausal) {
  for (int n = 1; n <= 10; ++n) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const BitString x = BitString::from_mask(n, m);
      const auto q = string_guessing_weights(x);
      const auto ref = q_numerators(x);
      for (int i = 0; i < n; ++i) {
        ASSERT_EQ(q[i].value(), Rational(ref[i], std::int64_t{1} << n));
        ASSERT_GT(q[i].value(), Rational(0));
        ASSERT_LT(q[i].value(), Rational(1));
      }
      // Flipping x_j leaves q_1..q_j untouched.
      for (int j = 0; j < n; ++j) {
        BitString flipped = x;
        flipped.set(j, !x[j]);
        const auto g = string_guessing_weights(flipped);
        for (int i = 0; i <= j; ++i) ASSERT_TRUE(g[i] == q[i]);
      }
    }
  }
}

TEST(StringGuessing, LaterExponentsStayOnTheirSide) {
  for (int n = 1; n <= 10; ++n) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const BitString x = BitString::from_mask(n, m);
      const auto q = string_guessing_weights(x);
      const ExponentWeight gap{1, n};
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (x[i]) {
            ASSERT_GE(q[j].value(), q[i].value() + gap.value());
          } else {
            ASSERT_LE(q[j].value(), q[i].value() - gap.value());
          }
        }
      }
    }
  }
}

TEST(StringGuessing, InstanceCarriesBits) {
  const Instance inst = string_guessing_instance(BitString::parse("0110"));
  ASSERT_EQ(inst.size(), 4);
  EXPECT_EQ(inst.problem, Problem::kMinAsg);
  EXPECT_TRUE(std::get<AsgBit>(inst.requests[1].payload).value);
  EXPECT_FALSE(std::get<AsgBit>(inst.requests[3].payload).value);
}

TEST(StringGuessing, LogWeightSum) {
  const auto q = string_guessing_weights(BitString::parse("101"));
  // 2^4 + 2^5 over log2 a = 8.
  EXPECT_DOUBLE_EQ(log2_weight_sum(q, BitString::parse("101"), 8), std::log2(48.0));
  EXPECT_EQ(log2_weight_sum(q, BitString(3), 8), -INFINITY);
}

TEST(Verifier, GuessZeroIsInfeasible) {
  auto w = string_guessing_verify(guess_zero_scheme(), 4, 0, 64);
  EXPECT_TRUE(w.infeasible);
  EXPECT_NE(w.x, w.colliding_x);
  EXPECT_GT(w.x.ones(), 0);
  EXPECT_GT(w.colliding_x.ones(), 0);
}

TEST(Verifier, VerbatimIsInapplicable) {
  EXPECT_THROW(string_guessing_verify(verbatim_guess_scheme(), 6, 6, 64), InapplicableError);
}

TEST(Verifier, TruncatedVerbatimFails) {
  auto w = string_guessing_verify(verbatim_guess_scheme(), 6, 5, 2048);
  EXPECT_TRUE(w.infeasible || w.log2_ratio >= 2048.0 / 64 - std::log2(6.0));
}

TEST(Verifier, CoveringWithSevenBits) {
  auto w = string_guessing_verify(covering_scheme(Rational(2), Direction::kMin, 8), 8, 7, 2048);
  EXPECT_TRUE(w.infeasible || w.log2_ratio >= 5.0);
}

TEST(Verifier, RejectsBadArguments) {
  EXPECT_THROW(string_guessing_verify(guess_zero_scheme(), 17, 0, 1), ResourceError);
  EXPECT_THROW(string_guessing_verify(guess_zero_scheme(), 4, 0, 0), DomainError);
}

TEST(GeometricFamily, MatchingStar) {
  const auto fam = geometric_family(Problem::kMatching, 3, 10);
  ASSERT_EQ(fam.size(), 3u);
  const auto& last = fam[2];
  EXPECT_EQ(last.weights(), (std::vector<double>{10, 100, 1000}));
  EXPECT_EQ(brute_force_opt(last).score, 1000.0);
}

TEST(GeometricFamily, PrefixesNestAndOptIsLast) {
  for (Problem p : {Problem::kIndependentSet, Problem::kClique, Problem::kMatching,
                    Problem::kDisjointPath}) {
    for (int n = 1; n <= 6; ++n) {
      const auto fam = geometric_family(p, n, 3.0);
      ASSERT_EQ(fam.size(), static_cast<std::size_t>(n));
      for (int i = 1; i <= n; ++i) {
        const Instance& inst = fam[i - 1];
        ASSERT_EQ(inst.size(), i);
        EXPECT_DOUBLE_EQ(brute_force_opt(inst).score, std::pow(3.0, i));
        // At most one acceptance is ever feasible.
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << i); ++m) {
          const BitString y = BitString::from_mask(i, m);
          if (y.zeros() >= 2) ASSERT_FALSE(check_feasible(inst, y));
        }
        if (i < n) {
          const Instance& next = fam[i];
          std::vector<int> head(i);
          std::iota(head.begin(), head.end(), 0);
          const Instance cut = restrict_to(next, head);
          EXPECT_EQ(cut.weights(), inst.weights());
          for (std::uint64_t m = 0; m < (std::uint64_t{1} << i); ++m) {
            const BitString y = BitString::from_mask(i, m);
            ASSERT_EQ(check_feasible(cut, y), check_feasible(inst, y));
          }
        }
      }
    }
  }
}

TEST(GeometricFamily, Budget) {
  EXPECT_EQ(geometric_family_budget(8), 2);
  EXPECT_EQ(geometric_family_budget(4), 1);
  EXPECT_EQ(geometric_family_budget(2), 0);
}

TEST(GeometricFamily, GreedyCollides) {
  auto w = geometric_family_verify(Problem::kIndependentSet, 6, 10,
                                   greedy_base(Problem::kIndependentSet).scheme, 1);
  EXPECT_LT(w.shorter, w.longer);
  EXPECT_TRUE(w.infeasible || w.unbounded || w.log2_ratio >= std::log2(10.0) - 1e-12);
}

TEST(Star, ExpectationsForTwo) {
  auto e = star_expectations(Rational(2));
  EXPECT_EQ(e.k, 3);
  EXPECT_EQ(e.e_opt, Rational(4));
  EXPECT_EQ(e.e_det, (std::vector<Rational>{2, 2, 2}));
  EXPECT_EQ(e.distribution, (std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 4)}));
  EXPECT_TRUE(e.identities_hold());
}

TEST(Star, ExpectationsForOne) {
  auto e = star_expectations(Rational(1));
  EXPECT_EQ(e.k, 1);
  EXPECT_EQ(e.e_opt, Rational(2));
  EXPECT_EQ(e.e_det, std::vector<Rational>{2});
}

TEST(Star, HalfIntegerAndInvalidC) {
  EXPECT_EQ(star_expectations(Rational(3, 2)).k, 2);
  EXPECT_THROW(star_expectations(Rational(4, 3)), DomainError);
  EXPECT_THROW(star_expectations(Rational(1, 2)), DomainError);
}

TEST(Star, ExpectationsFromTheDistribution) {
  for (int c = 1; c <= 10; ++c) {
    auto e = star_expectations(Rational(c));
    const int k = 2 * c - 1;
    Rational total(0), opt(0);
    for (int j = 1; j <= k; ++j) {
      const Rational pj = j < k ? Rational(1, std::int64_t{1} << j)
                                : Rational(1, std::int64_t{1} << (k - 1));
      EXPECT_EQ(e.distribution[j - 1], pj);
      total += pj;
      opt += pj * Rational(std::int64_t{1} << j);
    }
    EXPECT_EQ(total, Rational(1));
    EXPECT_EQ(e.e_opt, opt);
    EXPECT_EQ(opt, Rational(k + 1));
  }
}

TEST(Star, SamplerFollowsTheLaw) {
  SplitMix64 rng(9);
  std::vector<int> counts(6, 0);
  const int samples = 200000;
  for (int i = 0; i < samples; ++i) {
    const int x = sample_star_length(5, rng);
    ASSERT_GE(x, 1);
    ASSERT_LE(x, 5);
    ++counts[x];
  }
  const double p[] = {0, 0.5, 0.25, 0.125, 0.0625, 0.0625};
  for (int j = 1; j <= 5; ++j) {
    const double se = std::sqrt(p[j] * (1 - p[j]) / samples);
    EXPECT_NEAR(counts[j] / double(samples), p[j], 4 * se);
  }
}

TEST(Star, MonteCarloAgrees) {
  auto mc = star_monte_carlo(Rational(3), 200000, 4);
  EXPECT_NEAR(mc.mean_opt, 6.0, 3 * mc.se_opt);
  ASSERT_EQ(mc.mean_det.size(), 5u);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(mc.mean_det[j], 2.0, 3 * mc.se_det[j]);
}

TEST(Star, LastEdgeIsOptimal) {
  for (int x = 1; x <= 6; ++x) {
    const Instance inst = star_instance(x);
    AdviceTape tape;
    auto r = run_scheme(inst, accept_last_scheme(), tape);
    EXPECT_EQ(r.alg_score, std::ldexp(1.0, x));
    EXPECT_EQ(r.alg_score, r.opt_score);
  }
}

TEST(Star, AcceptJth) {
  AdviceTape t1, t2;
  EXPECT_EQ(run_scheme(star_instance(4), accept_jth_scheme(2), t1).alg_score, 4.0);
  EXPECT_EQ(run_scheme(star_instance(1), accept_jth_scheme(2), t2).alg_score, 0.0);
}
