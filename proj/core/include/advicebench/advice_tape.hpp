#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace advicebench {

// The advice-on-tape model: an oracle appends bits, the online algorithm
// reads them sequentially. Reads past the written region return 0 (the
// tape is conceptually infinite). The advice complexity of a run is the
// number of bits read, never the number written.
class AdviceTape {
 public:
  AdviceTape() = default;
  static AdviceTape from_bits(std::string_view bits);

  // Oracle side.
  void write_bit(bool bit) { bits_.push_back(bit); }
  // Appends exactly `width` bits, most significant first.
  void write_uint_fixed(std::uint64_t value, int width);
  // L ones, a zero, then the L-bit binary value (L = bit length); 2L+1 bits.
  void write_self_delimited(std::uint64_t value);
  // Sign bit (1 = negative) followed by write_self_delimited(|value| + 1).
  void write_signed_self_delimited(std::int64_t value);
  void append(const AdviceTape& other);

  // Algorithm side.
  bool read_bit();
  std::uint64_t read_uint_fixed(int width);
  std::uint64_t read_self_delimited();
  std::int64_t read_signed_self_delimited();

  // Peak read position; the per-run advice complexity.
  std::size_t bits_read() const { return peak_read_; }
  std::size_t cursor() const { return cursor_; }
  std::size_t bits_written() const { return bits_.size(); }

  // Copy of the tape with everything past `budget` bits dropped, so any
  // read beyond the budget sees zeros. Cursor is reset.
  AdviceTape truncated(std::size_t budget) const;
  void rewind();

  std::string written_string() const;
  std::string to_hex() const;

 private:
  std::vector<bool> bits_;
  std::size_t cursor_ = 0;
  std::size_t peak_read_ = 0;
};

// Number of bits needed to store values in [0, count): ceil(log2(max(1,count))).
int bits_for_count(std::uint64_t count);
// Bit length of value >= 1.
int bit_length(std::uint64_t value);
// Size of write_self_delimited(value).
int self_delimited_size(std::uint64_t value);

}  // namespace advicebench
