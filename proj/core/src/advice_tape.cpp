#include "advicebench/advice_tape.hpp"

#include <algorithm>
#include <bit>

#include "advicebench/errors.hpp"

namespace advicebench {

int bit_length(std::uint64_t value) { return std::bit_width(value); }

int bits_for_count(std::uint64_t count) {
  if (count <= 1) return 0;
  return std::bit_width(count - 1);
}

int self_delimited_size(std::uint64_t value) {
  return 2 * bit_length(value) + 1;
}

AdviceTape AdviceTape::from_bits(std::string_view bits) {
  AdviceTape tape;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw EncodingError("advice tape literal must contain only 0/1");
    }
    tape.write_bit(ch == '1');
  }
  return tape;
}

void AdviceTape::write_uint_fixed(std::uint64_t value, int width) {
  if (width < 0 || width > 64) {
    throw EncodingError("fixed width must be in [0, 64]");
  }
  if (width < 64 && (value >> width) != 0) {
    throw EncodingError("value " + std::to_string(value) +
                        " does not fit in " + std::to_string(width) + " bits");
  }
  for (int b = width - 1; b >= 0; --b) write_bit((value >> b) & 1U);
}

void AdviceTape::write_self_delimited(std::uint64_t value) {
  if (value < 1) {
    throw EncodingError("self-delimited encoding requires value >= 1");
  }
  const int len = bit_length(value);
  for (int i = 0; i < len; ++i) write_bit(true);
  write_bit(false);
  write_uint_fixed(value, len);
}

void AdviceTape::write_signed_self_delimited(std::int64_t value) {
  write_bit(value < 0);
  const std::uint64_t magnitude =
      value < 0 ? static_cast<std::uint64_t>(-(value + 1)) + 1
                : static_cast<std::uint64_t>(value);
  write_self_delimited(magnitude + 1);
}

void AdviceTape::append(const AdviceTape& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

bool AdviceTape::read_bit() {
  const bool bit = cursor_ < bits_.size() ? bits_[cursor_] : false;
  ++cursor_;
  peak_read_ = std::max(peak_read_, cursor_);
  return bit;
}

std::uint64_t AdviceTape::read_uint_fixed(int width) {
  if (width < 0 || width > 64) {
    throw EncodingError("fixed width must be in [0, 64]");
  }
  std::uint64_t value = 0;
  for (int i = 0; i < width; ++i) value = (value << 1) | (read_bit() ? 1 : 0);
  return value;
}

std::uint64_t AdviceTape::read_self_delimited() {
  int len = 0;
  // A tape of all zeros past its end decodes to a length-0 prefix; such a
  // value is invalid and reported as 0 so callers can reject it.
  while (read_bit()) {
    if (++len > 64) throw EncodingError("self-delimited length prefix > 64");
  }
  return read_uint_fixed(len);
}

std::int64_t AdviceTape::read_signed_self_delimited() {
  const bool negative = read_bit();
  const std::uint64_t raw = read_self_delimited();
  const auto magnitude = static_cast<std::int64_t>(raw == 0 ? 0 : raw - 1);
  return negative ? -magnitude : magnitude;
}

AdviceTape AdviceTape::truncated(std::size_t budget) const {
  AdviceTape copy;
  const std::size_t keep = std::min(budget, bits_.size());
  copy.bits_.assign(bits_.begin(), bits_.begin() + keep);
  return copy;
}

void AdviceTape::rewind() {
  cursor_ = 0;
  peak_read_ = 0;
}

std::string AdviceTape::written_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

std::string AdviceTape::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits_.size(); i += 4) {
    int nibble = 0;
    for (std::size_t j = i; j < i + 4; ++j) {
      nibble = (nibble << 1) | (j < bits_.size() && bits_[j] ? 1 : 0);
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

}  // namespace advicebench
