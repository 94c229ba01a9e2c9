#include "advicebench/sparsify.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "advicebench/errors.hpp"

namespace advicebench {

namespace {

using boost::multiprecision::cpp_int;

cpp_int ipow(std::int64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(cpp_int(base), static_cast<unsigned>(exp));
}

}  // namespace

GeometricScale::GeometricScale(Rational s) : s_(s) {
  if (s_ <= Rational(1)) throw DomainError("geometric base must exceed 1");
  log_s_ = std::log(to_double(s_));
}

int GeometricScale::compare_power(std::int64_t k, double w) const {
  if (!(w > 0) || !std::isfinite(w)) {
    throw DomainError("weights must be positive and finite");
  }
  // w = mant * 2^exp with an integer mantissa.
  int e = 0;
  const double frac = std::frexp(w, &e);
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  const int exp = e - 53;

  const std::int64_t p = s_.numerator();
  const std::int64_t q = s_.denominator();
  const std::uint64_t a = static_cast<std::uint64_t>(k < 0 ? -k : k);
  // Compare s^k with mant * 2^exp in integers.
  cpp_int lhs = k >= 0 ? ipow(p, a) : ipow(q, a);
  cpp_int rhs = cpp_int(mant) * (k >= 0 ? ipow(q, a) : ipow(p, a));
  if (exp >= 0) {
    rhs <<= exp;
  } else {
    lhs <<= -exp;
  }
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

bool GeometricScale::power_le(std::int64_t k, double w) const {
  return compare_power(k, w) <= 0;
}

std::int64_t GeometricScale::bucket(double w) const {
  if (!(w > 0) || !std::isfinite(w)) {
    throw DomainError("weights must be positive and finite");
  }
  auto k = static_cast<std::int64_t>(std::floor(std::log(w) / log_s_));
  while (!power_le(k, w)) --k;
  while (power_le(k + 1, w)) ++k;
  return k;
}

double GeometricScale::power(std::int64_t k) const {
  return std::pow(to_double(s_), static_cast<double>(k));
}

int GeometricScale::threshold(int n) const {
  if (n < 1) throw DomainError("threshold needs n >= 1");
  const double target = static_cast<double>(n) * n;
  int t = 0;
  while (compare_power(t, target) < 0) ++t;
  return t;
}

SparsifyParams SparsifyParams::make(int n, const Rational& epsilon,
                                    const Rational& s, std::int64_t m) {
  if (epsilon <= Rational(0) || epsilon > Rational(1)) {
    throw DomainError("epsilon must lie in (0, 1]");
  }
  SparsifyParams params;
  params.epsilon = epsilon;
  params.s = s;
  params.n = n;
  params.m = m;
  params.threshold = GeometricScale(s).threshold(n);
  return params;
}

WeightClass classify_bucket(std::int64_t k, std::int64_t m, int threshold) {
  if (k > m) return {WeightTag::kHuge, 0};
  if (k < m - threshold) return {WeightTag::kUnimportant, 0};
  return {WeightTag::kImportant, static_cast<int>(m - k)};
}

WeightClass classify_weight(double w, const SparsifyParams& params) {
  if (!(w > 0)) throw DomainError("weights must be positive");
  return classify_bucket(GeometricScale(params.s).bucket(w), params.m,
                         params.threshold);
}

}  // namespace advicebench
