#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace advicebench {

using Rational = boost::rational<std::int64_t>;

// Parses "2", "3/2", "0.5" or "1e-1" exactly into a rational. Decimal
// fractions are taken at face value (0.1 == 1/10).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

}  // namespace advicebench
