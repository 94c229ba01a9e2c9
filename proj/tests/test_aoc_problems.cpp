#include <gtest/gtest.h>

#include <map>
#include <set>

#include "advicebench/aoc_problems.hpp"
#include "advicebench/errors.hpp"
#include "support/generators.hpp"

using namespace advicebench;

namespace {

// Second, deliberately naive feasibility checker. It works on accepted
// index sets and adjacency matrices instead of masks.
struct Oracle {
  const Instance& inst;

  std::vector<std::vector<bool>> matrix() const {
    const int n = inst.size();
    std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
      for (int j : std::get<VertexArrival>(inst.requests[i].payload).earlier_neighbors) {
        a[i][j] = a[j][i] = true;
      }
    }
    return a;
  }

  bool has_cycle(const std::vector<int>& vs) const {
    auto a = matrix();
    std::set<int> alive(vs.begin(), vs.end());
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v : std::set<int>(alive)) {
        int deg = 0;
        for (int u : alive) deg += a[v][u] ? 1 : 0;
        if (deg <= 1) {
          alive.erase(v);
          changed = true;
        }
      }
    }
    return !alive.empty();
  }

  bool feasible(const BitString& y) const {
    const int n = inst.size();
    const bool minimize = is_minimization(inst.problem);
    std::vector<int> acc;
    for (int i = 0; i < n; ++i) {
      if (y[i] == minimize) acc.push_back(i);
    }
    auto in = [&](int v) { return std::find(acc.begin(), acc.end(), v) != acc.end(); };
    switch (inst.problem) {
      case Problem::kMinAsg:
        for (int i = 0; i < n; ++i) {
          if (std::get<AsgBit>(inst.requests[i].payload).value && !in(i)) return false;
        }
        return true;
      case Problem::kVertexCover: {
        auto a = matrix();
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (a[i][j] && !in(i) && !in(j)) return false;
        return true;
      }
      case Problem::kDominatingSet: {
        auto a = matrix();
        for (int v = 0; v < n; ++v) {
          bool dom = in(v);
          for (int u : acc) dom = dom || a[v][u];
          if (!dom) return false;
        }
        return true;
      }
      case Problem::kCycleFinding:
        return has_cycle(acc);
      case Problem::kSetCover: {
        std::set<int> covered;
        for (int i : acc) {
          for (int e : std::get<Subset>(inst.requests[i].payload).elements) covered.insert(e);
        }
        return static_cast<int>(covered.size()) == inst.universe_size;
      }
      case Problem::kIndependentSet: {
        auto a = matrix();
        for (int i : acc)
          for (int j : acc)
            if (a[i][j]) return false;
        return true;
      }
      case Problem::kClique: {
        auto a = matrix();
        for (int i : acc)
          for (int j : acc)
            if (i != j && !a[i][j]) return false;
        return true;
      }
      case Problem::kMatching: {
        std::map<int, int> use;
        for (int i : acc) {
          const auto& e = std::get<Edge>(inst.requests[i].payload);
          if (++use[e.u] > 1 || ++use[e.v] > 1) return false;
        }
        return true;
      }
      case Problem::kDisjointPath: {
        std::map<int, int> use;
        for (int i : acc) {
          const auto& p = std::get<Subpath>(inst.requests[i].payload);
          for (int v = p.start; v < p.end; ++v) {
            if (++use[v] > 1) return false;
          }
        }
        return true;
      }
    }
    return false;
  }

  double score(const BitString& y) const {
    const bool minimize = is_minimization(inst.problem);
    double s = 0;
    for (int i = 0; i < inst.size(); ++i) {
      if (y[i] == minimize) s += inst.requests[i].weight;
    }
    return s;
  }
};

Instance path3(double a, double b, double c) {
  Instance inst;
  inst.problem = Problem::kVertexCover;
  inst.requests = {{VertexArrival{}, a}, {VertexArrival{{0}}, b}, {VertexArrival{{1}}, c}};
  return inst;
}

Instance clique3(Problem p, double a, double b, double c) {
  Instance inst;
  inst.problem = p;
  inst.requests = {{VertexArrival{}, a}, {VertexArrival{{0}}, b}, {VertexArrival{{0, 1}}, c}};
  return inst;
}

Instance asg(std::string_view bits, std::vector<double> w = {}) {
  Instance inst;
  inst.problem = Problem::kMinAsg;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    inst.requests.push_back({AsgBit{bits[i] == '1'}, w.empty() ? 1.0 : w[i]});
  }
  return inst;
}

}  // namespace

TEST(Feasibility, SpecExamples) {
  EXPECT_TRUE(check_feasible(path3(1, 1, 1), BitString::parse("010")));
  EXPECT_FALSE(check_feasible(asg("0110"), BitString::parse("0100")));

  Instance star;
  star.problem = Problem::kMatching;
  star.requests = {{Edge{0, 1}, 1.0}, {Edge{0, 2}, 1.0}};
  EXPECT_FALSE(check_feasible(star, BitString::parse("00")));
  EXPECT_TRUE(check_feasible(star, BitString::parse("01")));
}

TEST(Evaluate, InfeasibleScoresAreInfinite) {
  auto o = evaluate(asg("1"), BitString::parse("0"));
  EXPECT_FALSE(o.feasible);
  EXPECT_EQ(o.score, INFINITY);
  auto m = evaluate(clique3(Problem::kIndependentSet, 1, 1, 1), BitString::parse("000"));
  EXPECT_FALSE(m.feasible);
  EXPECT_EQ(m.score, -INFINITY);
}

TEST(BruteForce, SpecExamples) {
  auto vc = brute_force_opt(path3(5, 1, 5));
  EXPECT_EQ(vc.output.str(), "010");
  EXPECT_EQ(vc.score, 1.0);

  auto is = brute_force_opt(clique3(Problem::kIndependentSet, 10, 100, 1000));
  EXPECT_EQ(is.output.str(), "110");
  EXPECT_EQ(is.score, 1000.0);

  auto a = brute_force_opt(asg("101", {16, 64, 32}));
  EXPECT_EQ(a.output.str(), "101");
  EXPECT_EQ(a.score, 48.0);
}

TEST(BruteForce, TiesGoToSmallestOutput) {
  Instance inst = asg("000");
  EXPECT_EQ(brute_force_opt(inst).output.str(), "000");
  // Two optimal covers of a single edge: {v2} (01) beats {v1} (10).
  Instance edge;
  edge.problem = Problem::kVertexCover;
  edge.requests = {{VertexArrival{}, 1.0}, {VertexArrival{{0}}, 1.0}};
  EXPECT_EQ(brute_force_opt(edge).output.str(), "01");
}

TEST(BruteForce, RejectsOversizedInstances) {
  EXPECT_THROW(brute_force_opt(asg(std::string(kMaxBruteForceRequests + 1, '0'))),
               ResourceError);
}

TEST(Validate, CatchesBadInput) {
  Instance bad = asg("01");
  bad.requests[0].weight = 0;
  EXPECT_THROW(bad.validate(), ContractError);

  Instance kind = asg("01");
  kind.problem = Problem::kVertexCover;
  EXPECT_THROW(kind.validate(), ContractError);

  Instance forward;
  forward.problem = Problem::kIndependentSet;
  forward.requests = {{VertexArrival{{0}}, 1.0}};
  EXPECT_THROW(forward.validate(), ContractError);
}

TEST(ProblemNames, RoundTrip) {
  for (Problem p : testgen::kAllProblems) EXPECT_EQ(parse_problem(to_string(p)), p);
  EXPECT_THROW(parse_problem("knapsack"), ContractError);
}

// Checker, scorer and optimum agree with the naive oracle on random input.
TEST(Property, CheckerAgreesWithOracle) {
  std::mt19937_64 g(11);
  for (Problem p : testgen::kAllProblems) {
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 1 + static_cast<int>(g() % 8);
      const Instance inst = testgen::random_instance(p, n, g, 2.0, 0.4);
      const Oracle oracle{inst};
      double best = is_minimization(p) ? INFINITY : -INFINITY;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const BitString y = BitString::from_mask(n, mask);
        const bool ok = oracle.feasible(y);
        ASSERT_EQ(check_feasible(inst, y), ok) << to_string(p) << " " << y.str();
        const Outcome o = evaluate(inst, y);
        ASSERT_EQ(o.feasible, ok);
        if (!ok) continue;
        EXPECT_NEAR(o.score, oracle.score(y), 1e-9 * std::max(1.0, o.score));
        EXPECT_EQ(evaluate_unweighted(inst, y).score,
                  is_minimization(p) ? y.ones() : y.zeros());
        best = is_minimization(p) ? std::min(best, o.score) : std::max(best, o.score);
      }
      if (std::isinf(best)) {
        EXPECT_THROW(brute_force_opt(inst), ContractError);
        continue;
      }
      const Outcome opt = brute_force_opt(inst);
      EXPECT_TRUE(opt.feasible);
      EXPECT_NEAR(opt.score, best, 1e-9 * std::max(1.0, std::abs(best)));
    }
  }
}

// Min problems are upward closed, Max problems downward closed in accepted
// requests. Both read as: raising output bits keeps feasibility.
TEST(Property, OptimaAreMonotone) {
  std::mt19937_64 g(12);
  for (Problem p : testgen::kAllProblems) {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + static_cast<int>(g() % 10);
      const Instance inst = testgen::random_instance(p, n, g, 0.0, 0.5);
      if (!check_feasible(inst, BitString::all_ones(n))) continue;
      const Outcome opt = brute_force_opt(inst);
      ASSERT_TRUE(check_feasible(inst, opt.output));
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const BitString y = BitString::from_mask(n, mask);
        if (opt.output.is_below(y)) ASSERT_TRUE(check_feasible(inst, y)) << y.str();
      }
    }
  }
}

TEST(Restrict, ReindexesVertices) {
  Instance k3 = clique3(Problem::kClique, 1, 2, 3);
  const int keep[] = {0, 2};
  Instance sub = restrict_to(k3, keep);
  ASSERT_EQ(sub.size(), 2);
  EXPECT_EQ(std::get<VertexArrival>(sub.requests[1].payload).earlier_neighbors,
            std::vector<int>{0});
  EXPECT_EQ(sub.requests[1].weight, 3.0);
  EXPECT_EQ(unweighted(k3).requests[2].weight, 1.0);
}

namespace {

class Echo : public OnlineAlgorithm {
 public:
  bool next(std::span<const Request> seen, AdviceTape& tape) override {
    sizes.push_back(seen.size());
    return tape.read_bit();
  }
  std::vector<std::size_t> sizes;
};

}  // namespace

TEST(Serve, RevealsOneRequestAtATime) {
  Echo echo;
  AdviceTape tape = AdviceTape::from_bits("101");
  const BitString y = serve(asg("000"), echo, tape);
  EXPECT_EQ(y.str(), "101");
  EXPECT_EQ(echo.sizes, (std::vector<std::size_t>{1, 2, 3}));
}
