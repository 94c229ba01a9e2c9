#include "advicebench/rational.hpp"

#include <charconv>
#include <numeric>

#include "advicebench/errors.hpp"

namespace advicebench {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::int64_t pow10(int e) {
  if (e > 18) throw DomainError("too many decimal digits for a rational");
  std::int64_t p = 1;
  for (int i = 0; i < e; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw DomainError("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<int>(parse_int(text.substr(e + 1)));
    text = text.substr(0, e);
  }
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  int frac_digits = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    frac_digits = static_cast<int>(text.size() - dot - 1);
  } else {
    digits = std::string(text);
  }
  if (digits.empty()) throw DomainError("malformed rational literal");
  std::int64_t num = parse_int(digits);
  if (negative) num = -num;
  const int scale = frac_digits - exponent;
  if (scale >= 0) return Rational(num, pow10(scale));
  return Rational(num * pow10(-scale), 1);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace advicebench
