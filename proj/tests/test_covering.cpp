#include <gtest/gtest.h>

#include <cmath>

#include "advicebench/covering.hpp"
#include "advicebench/errors.hpp"

using namespace advicebench;

namespace {

// Cover relation written out with integer cross-multiplication.
bool covers(const BitString& x, const BitString& y, std::int64_t num,
            std::int64_t den, Direction d) {
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] && !y[i]) return false;
  }
  if (d == Direction::kMin) return y.ones() * den <= num * x.ones();
  return y.zeros() * num >= x.zeros() * den;
}

bool family_covers_everything(const CoveringFamily& f) {
  const auto num = f.c.numerator();
  const auto den = f.c.denominator();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.n); ++mask) {
    const BitString x = BitString::from_mask(f.n, mask);
    bool found = false;
    for (const auto& y : f.members) found = found || covers(x, y, num, den, f.direction);
    if (!found) return false;
  }
  return true;
}

double b_reference(int n, double c) {
  const double head = c == 1.0 ? 1.0 : std::pow(c - 1, c - 1);
  return n * std::log2(1 + head / std::pow(c, c));
}

Instance asg(const BitString& x) {
  Instance inst;
  inst.problem = Problem::kMinAsg;
  for (int i = 0; i < x.size(); ++i) inst.requests.push_back({AsgBit{x[i]}, 1.0});
  return inst;
}

Instance edgeless_is(int n) {
  Instance inst;
  inst.problem = Problem::kIndependentSet;
  for (int i = 0; i < n; ++i) inst.requests.push_back({VertexArrival{}, 1.0});
  return inst;
}

}  // namespace

TEST(BBound, Examples) {
  EXPECT_NEAR(b_bound(16, Rational(2)), 5.1509, 1e-4);
  EXPECT_DOUBLE_EQ(b_bound(10, Rational(1)), 10.0);
  // 16 log2(1 + 27/256) = 2.31453...
  EXPECT_NEAR(b_bound(16, Rational(4)), 2.31453, 1e-5);
}

TEST(BBound, MatchesFormulaAndDecreasesInC) {
  for (int n : {1, 5, 12, 40}) {
    double last = INFINITY;
    for (int k = 2; k <= 20; ++k) {
      const Rational c(k, 2);
      const double b = b_bound(n, c);
      EXPECT_NEAR(b, b_reference(n, to_double(c)), 1e-9);
      EXPECT_LE(b, last);
      last = b;
    }
  }
}

TEST(BBound, RejectsCBelowOne) {
  EXPECT_THROW(b_bound(4, Rational(1, 2)), DomainError);
}

TEST(Family, SingleBit) {
  auto f = build_family_greedy(1, Rational(2), Direction::kMin);
  ASSERT_EQ(f.members.size(), 2u);
  EXPECT_EQ(f.members[0].str(), "0");
  EXPECT_EQ(f.members[1].str(), "1");
  EXPECT_EQ(f.index_width, 1);
  EXPECT_EQ(lookup_cover(f, BitString::parse("0")), std::make_pair(0, BitString::parse("0")));
  EXPECT_EQ(lookup_cover(f, BitString::parse("1")), std::make_pair(1, BitString::parse("1")));
}

TEST(Family, LargeCCollapsesToTwoMembers) {
  auto f = build_family_greedy(4, Rational(4), Direction::kMin);
  EXPECT_EQ(f.members.size(), 2u);
  EXPECT_EQ(f.index_width, 1);
  EXPECT_TRUE(family_covers_everything(f));
}

TEST(Family, FourBitsFactorTwo) {
  auto f = build_family_greedy(4, Rational(2), Direction::kMin);
  EXPECT_TRUE(family_covers_everything(f));
  EXPECT_TRUE(verify_family(f));
  auto [idx, y] = lookup_cover(f, BitString::parse("0100"));
  EXPECT_TRUE(y[1]);
  EXPECT_LE(y.ones(), 2);
  EXPECT_EQ(f.members[idx], y);
}

TEST(Family, GreedyIsValidAcrossParameters) {
  for (auto d : {Direction::kMin, Direction::kMax}) {
    for (int n = 1; n <= 10; ++n) {
      for (const Rational& c : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
        auto f = build_family_greedy(n, c, d);
        ASSERT_TRUE(family_covers_everything(f)) << n << " " << to_string(c);
        EXPECT_TRUE(verify_family(f));
        EXPECT_TRUE(std::is_sorted(f.members.begin(), f.members.end()));
        EXPECT_EQ(f.index_width, bits_for_count(f.members.size()));
      }
    }
  }
}

TEST(Family, VerifierRejectsBrokenFamily) {
  auto f = build_family_greedy(5, Rational(2), Direction::kMin);
  f.members.erase(f.members.begin());
  EXPECT_FALSE(verify_family(f));
}

TEST(Family, SizeShrinksAsCGrows) {
  std::size_t last = SIZE_MAX;
  for (int k = 1; k <= 6; ++k) {
    auto f = build_family_greedy(10, Rational(k), Direction::kMin);
    EXPECT_LE(f.members.size(), last);
    last = f.members.size();
  }
}

TEST(Family, RejectsOversizedN) {
  EXPECT_THROW(build_family_greedy(kMaxFamilyLength + 1, Rational(2), Direction::kMin),
               ResourceError);
}

TEST(CoveringRun, AllZeroString) {
  auto f = build_family_greedy(2, Rational(2), Direction::kMin);
  AdviceTape tape;
  auto out = run_unweighted_aoc(asg(BitString::parse("00")), f, BitString::parse("00"), tape);
  EXPECT_EQ(out.output.str(), "00");
  EXPECT_EQ(out.score, 0.0);
}

TEST(CoveringRun, SingleOneReadsOneBit) {
  auto f = build_family_greedy(1, Rational(2), Direction::kMin);
  AdviceTape tape;
  auto out = run_unweighted_aoc(asg(BitString::parse("1")), f, BitString::parse("1"), tape);
  EXPECT_EQ(out.output.str(), "1");
  EXPECT_EQ(out.score, 1.0);
  EXPECT_EQ(tape.bits_read(), 1u);
}

TEST(CoveringRun, ExhaustiveMinAsgEightBits) {
  auto f = build_family_greedy(8, Rational(2), Direction::kMin);
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    const BitString x = BitString::from_mask(8, mask);
    AdviceTape tape;
    auto out = run_unweighted_aoc(asg(x), f, x, tape);
    ASSERT_TRUE(out.feasible);
    EXPECT_LE(out.output.ones(), 2 * x.ones());
    EXPECT_EQ(tape.bits_read(), static_cast<std::size_t>(f.index_width));
  }
}

TEST(CoveringRun, MaxDirectionKeepsHalfTheProfit) {
  auto f = build_family_greedy(8, Rational(2), Direction::kMax);
  const Instance inst = edgeless_is(8);
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    const BitString x = BitString::from_mask(8, mask);
    AdviceTape tape;
    auto out = run_unweighted_aoc(inst, f, x, tape);
    ASSERT_TRUE(out.feasible);
    EXPECT_TRUE(x.is_below(out.output));
    EXPECT_GE(2 * out.output.zeros(), x.zeros());
  }
}

TEST(CoveringScheme, UnknownLengthIsPrefixed) {
  auto scheme = covering_scheme(Rational(2), Direction::kMin);
  const BitString x = BitString::parse("011010");
  AdviceTape tape;
  scheme.oracle(asg(x), x, tape);
  auto alg = scheme.make_algorithm();
  const BitString y = serve(asg(x), *alg, tape);
  EXPECT_TRUE(x.is_below(y));
  EXPECT_LE(y.ones(), 2 * x.ones());
  const auto family = cached_family(6, Rational(2), Direction::kMin);
  EXPECT_EQ(tape.bits_read(),
            static_cast<std::size_t>(self_delimited_size(6) + family->index_width));
}

TEST(CoveringScheme, CacheReturnsSameFamily) {
  auto a = cached_family(7, Rational(2), Direction::kMax);
  auto b = cached_family(7, Rational(2), Direction::kMax);
  EXPECT_EQ(a.get(), b.get());
}
