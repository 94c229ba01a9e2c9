#pragma once

#include <cstdint>

namespace advicebench {

// SplitMix64 counter stream. First outputs for seed 0:
//   0xe220a8397b1dcdaf 0x6e789e6aa1b965f4 0x06c45d188009454f
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform in [0, bound) via a 128-bit multiply; bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }
  // 10^(U * decades) with U uniform in [0, 1).
  double log_uniform(double decades);

 private:
  std::uint64_t state_;
};

// Seed of trial t (0-based) in a batch: the t-th output of SplitMix64(base).
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t t);

}  // namespace advicebench
