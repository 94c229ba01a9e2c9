#include "advicebench/rng.hpp"

#include <cmath>

namespace advicebench {

double SplitMix64::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  __extension__ using u128 = unsigned __int128;
  const u128 product = static_cast<u128>((*this)()) * bound;
  return static_cast<std::uint64_t>(product >> 64);
}

double SplitMix64::log_uniform(double decades) {
  return std::pow(10.0, uniform() * decades);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t t) {
  // State after t steps is base + t * gamma; one more step yields output t.
  SplitMix64 rng(base + t * 0x9e3779b97f4a7c15ULL);
  return rng();
}

}  // namespace advicebench
