#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace advicebench {

// Fixed-length binary output string y_1..y_n with n <= 64.
//
// Position i (0-based) holds y_{i+1}. The "numeric value" of a string is its
// big-endian reading, so "0100" has value 4 and numeric order coincides with
// lexicographic order for equal lengths.
class BitString {
 public:
  static constexpr int kMaxLength = 64;

  BitString() = default;
  explicit BitString(int n);
  static BitString from_mask(int n, std::uint64_t mask);
  static BitString from_value(int n, std::uint64_t big_endian_value);
  static BitString parse(std::string_view text);
  static BitString all_ones(int n);

  int size() const { return n_; }
  bool operator[](int i) const { return (mask_ >> i) & 1U; }
  void set(int i, bool bit);

  // Bit i of the mask is position i.
  std::uint64_t mask() const { return mask_; }
  std::uint64_t value() const;

  int ones() const;
  int zeros() const { return n_ - ones(); }

  // x.is_below(y) is the bitwise order x ⊑ y: x_i = 1 implies y_i = 1.
  bool is_below(const BitString& y) const;

  BitString prefix(int len) const;
  std::string str() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a,
                                          const BitString& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.value() <=> b.value();
  }

 private:
  int n_ = 0;
  std::uint64_t mask_ = 0;
};

inline std::uint64_t low_bits(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

}  // namespace advicebench
