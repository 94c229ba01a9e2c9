#include "advicebench/bitstring.hpp"

#include <bit>

#include "advicebench/errors.hpp"

namespace advicebench {

namespace {

void check_length(int n) {
  if (n < 0 || n > BitString::kMaxLength) {
    throw ResourceError("bit strings are limited to 64 positions");
  }
}

}  // namespace

BitString::BitString(int n) : n_(n) { check_length(n); }

BitString BitString::from_mask(int n, std::uint64_t mask) {
  BitString s(n);
  s.mask_ = mask & low_bits(n);
  return s;
}

BitString BitString::from_value(int n, std::uint64_t big_endian_value) {
  BitString s(n);
  for (int i = 0; i < n; ++i) {
    if ((big_endian_value >> (n - 1 - i)) & 1U) s.mask_ |= std::uint64_t{1} << i;
  }
  return s;
}

BitString BitString::parse(std::string_view text) {
  BitString s(static_cast<int>(text.size()));
  for (int i = 0; i < s.n_; ++i) {
    if (text[i] == '1') {
      s.mask_ |= std::uint64_t{1} << i;
    } else if (text[i] != '0') {
      throw ContractError("bit string literal must contain only 0/1");
    }
  }
  return s;
}

BitString BitString::all_ones(int n) { return from_mask(n, low_bits(n)); }

void BitString::set(int i, bool bit) {
  const std::uint64_t b = std::uint64_t{1} << i;
  mask_ = bit ? (mask_ | b) : (mask_ & ~b);
}

std::uint64_t BitString::value() const {
  std::uint64_t v = 0;
  for (int i = 0; i < n_; ++i) v = (v << 1) | ((mask_ >> i) & 1U);
  return v;
}

int BitString::ones() const { return std::popcount(mask_); }

bool BitString::is_below(const BitString& y) const {
  if (n_ != y.n_) throw ContractError("bit string length mismatch");
  return (mask_ & ~y.mask_) == 0;
}

BitString BitString::prefix(int len) const {
  return from_mask(len, mask_);
}

std::string BitString::str() const {
  std::string out(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i) {
    if ((mask_ >> i) & 1U) out[i] = '1';
  }
  return out;
}

}  // namespace advicebench
