#pragma once

#include <cstdint>

#include "advicebench/rational.hpp"

namespace advicebench {

// Geometric buckets [s^k, s^{k+1}) for a rational base s > 1. All
// comparisons against powers of s are exact: a double is a dyadic
// rational, and p^k is compared with it in big-integer arithmetic.
class GeometricScale {
 public:
  explicit GeometricScale(Rational s);

  const Rational& base() const { return s_; }
  // s^k <= w, exactly.
  bool power_le(std::int64_t k, double w) const;
  // The unique k with s^k <= w < s^{k+1}; w must be positive and finite.
  std::int64_t bucket(double w) const;
  // Nearest double to s^k.
  double power(std::int64_t k) const;
  // Smallest t >= 0 with s^t >= n^2, i.e. ceil(log_s n^2).
  int threshold(int n) const;

 private:
  // Sign of s^k - w.
  int compare_power(std::int64_t k, double w) const;

  Rational s_;
  double log_s_;
};

// Sparsification base used by the Max/Min algorithms and scheduling.
inline Rational half_step_base(const Rational& epsilon) {
  return Rational(1) + epsilon / 2;
}

enum class WeightTag { kUnimportant, kImportant, kHuge };

struct WeightClass {
  WeightTag tag = WeightTag::kUnimportant;
  int offset = 0;  // m - k, only meaningful for kImportant
};

struct SparsifyParams {
  Rational epsilon{1};
  Rational s{3, 2};
  int n = 1;
  std::int64_t m = 0;  // bucket of the reference weight
  int threshold = 0;

  // Validates epsilon in (0,1] (epsilon only matters for reporting) and
  // s > 1, and fills the threshold from n.
  static SparsifyParams make(int n, const Rational& epsilon, const Rational& s,
                             std::int64_t m);
};

// Unimportant: k < m - T; Important(m - k): m - T <= k <= m; Huge: k > m.
WeightClass classify_bucket(std::int64_t k, std::int64_t m, int threshold);
WeightClass classify_weight(double w, const SparsifyParams& params);

}  // namespace advicebench
