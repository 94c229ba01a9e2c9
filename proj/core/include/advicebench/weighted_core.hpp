#pragma once

#include <functional>

#include "advicebench/aoc_problems.hpp"
#include "advicebench/rational.hpp"
#include "advicebench/report.hpp"

namespace advicebench {

// Constants used for the advice-bound columns. They are pinned here rather
// than fitted so that bounds are comparable across runs.
inline constexpr double kMaxAdviceK1 = 6.0;   // weighted Max: eps^-1 log^2 n
inline constexpr double kMinAdviceK1 = 6.0;   // weighted Min: eps^-1 log^2 n
inline constexpr double kBestBucketK = 3.0;   // best-bucket: log n

// Weighted Max AOC with sparsification. Reports are scored with weights.
AdviceScheme weighted_max_scheme(const Rational& c, const Rational& epsilon);
// Weighted Min AOC with a bounded weight ratio.
AdviceScheme weighted_min_scheme(const Rational& c, const Rational& epsilon);

// Unweighted base algorithm for the best-bucket wrapper.
struct BaseAlgorithm {
  AdviceScheme scheme;
  Rational c{2};
  // Advice bits the base reads on an n-request instance.
  std::function<double(int)> advice_bits = [](int) { return 0.0; };
};

// Accepts a request whenever the accepted set stays feasible; reads no
// advice. For matching this is the classic 2-competitive greedy.
BaseAlgorithm greedy_base(Problem problem);
// Covering advice on the unweighted sub-instance (length-prefixed).
BaseAlgorithm covering_base(const Rational& c);

// Best-bucket wrapper: s = 3/2, runs `base` on the weight bucket carrying
// the most optimal weight.
AdviceScheme best_bucket_scheme(const BaseAlgorithm& base);

// Runs oracle and algorithm on the instance and fills a weighted report
// against the brute-force optimum.
RunReport run_scheme(const Instance& instance, const AdviceScheme& scheme,
                     AdviceTape& tape);

// Covering advice on the unweighted copy of the instance; the ratio is
// checked against c.
RunReport covering_run(const Instance& instance, const Rational& c,
                       AdviceTape& tape);
RunReport weighted_max_run(const Instance& instance, const Rational& c,
                   const Rational& epsilon, AdviceTape& tape);
RunReport weighted_min_run(const Instance& instance, const Rational& c,
                   const Rational& epsilon, double wmin, double wmax,
                   AdviceTape& tape);
RunReport best_bucket_run(const Instance& instance, const BaseAlgorithm& base,
                   AdviceTape& tape);

// True when n is small enough that the oracle writes OPT verbatim.
bool max_verbatim(int n, const Rational& epsilon);  // n < (2 + 2 eps) / eps
bool min_verbatim(int n, const Rational& epsilon);  // n < (2 + eps) / eps

// Advice budgets evaluated at n.
double max_advice_bound(int n, const Rational& c, const Rational& epsilon,
                        double k1 = kMaxAdviceK1);
double min_advice_bound(int n, const Rational& c, const Rational& epsilon,
                        double wmin, double wmax, double k1 = kMinAdviceK1);
double best_bucket_advice_bound(int n, double base_bits,
                                double k = kBestBucketK);
// Competitive guarantee of the best-bucket wrapper at n.
double best_bucket_ratio_bound(int n, const Rational& base_c);

}  // namespace advicebench
