#include "advicebench/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>

#include "advicebench/errors.hpp"

namespace advicebench {

namespace {

// The greedy works on numeric values (big-endian readings). Popcount and
// the subset relation are invariant under the bit reversal that maps a
// value to a mask, so only the final conversion needs care.
using Word = std::uint32_t;

struct Bound {
  int n;
  std::int64_t num;
  std::int64_t den;
  Direction direction;

  // Largest number of extra ones a cover of a kx-ones string may carry.
  int max_extra(int kx) const {
    std::int64_t t = 0;
    if (direction == Direction::kMin) {
      t = (num - den) * kx / den;
    } else {
      t = (num - den) * (n - kx) / num;
    }
    return static_cast<int>(std::min<std::int64_t>(t, n - kx));
  }

  bool ok(int kx, int ky) const { return ky - kx <= max_extra(kx); }
};

Bound make_bound(int n, const Rational& c, Direction d) {
  if (c < Rational(1)) throw DomainError("covering ratio c must be >= 1");
  return Bound{n, c.numerator(), c.denominator(), d};
}

// Calls fn(y) for every y ⊒ x with at most max_extra(ones(x)) extra ones.
template <typename Fn>
void for_each_cover(const Bound& bound, Word x, Fn&& fn) {
  const int kx = std::popcount(x);
  const int tmax = bound.max_extra(kx);
  int free_pos[32];
  int f = 0;
  for (int b = 0; b < bound.n; ++b) {
    if (!((x >> b) & 1U)) free_pos[f++] = b;
  }
  fn(x);
  for (int t = 1; t <= tmax; ++t) {
    // Gosper's hack over t-subsets of the f free positions.
    Word comb = (Word{1} << t) - 1;
    const Word limit = Word{1} << f;
    while (comb < limit) {
      Word y = x;
      for (Word rest = comb; rest != 0; rest &= rest - 1) {
        y |= Word{1} << free_pos[std::countr_zero(rest)];
      }
      fn(y);
      const Word low = comb & (~comb + 1);
      const Word ripple = comb + low;
      comb = (((ripple ^ comb) >> 2) / low) | ripple;
    }
  }
}

std::vector<std::int64_t> binomial_row(int k) {
  std::vector<std::int64_t> row(k + 1, 1);
  for (int i = 1; i < k; ++i) row[i] = row[i - 1] * (k - i + 1) / i;
  return row;
}

}  // namespace

std::string_view to_string(Direction d) {
  return d == Direction::kMin ? "min" : "max";
}

Direction parse_direction(std::string_view text) {
  if (text == "min") return Direction::kMin;
  if (text == "max") return Direction::kMax;
  throw ContractError("direction must be 'min' or 'max'");
}

double b_bound(int n, const Rational& c) {
  if (c < Rational(1)) throw DomainError("B(n,c) requires c >= 1");
  if (c == Rational(1)) return static_cast<double>(n);
  const double cd = to_double(c);
  const double term = std::exp((cd - 1) * std::log(cd - 1) - cd * std::log(cd));
  return std::log2(1.0 + term) * n;
}

bool dominates(int n, const Rational& c, Direction d, const BitString& x,
               const BitString& y) {
  if (x.size() != n || y.size() != n) {
    throw ContractError("covering strings must have length n");
  }
  if (!x.is_below(y)) return false;
  const auto num = c.numerator();
  const auto den = c.denominator();
  if (d == Direction::kMin) return den * y.ones() <= num * x.ones();
  return num * y.zeros() >= den * x.zeros();
}

CoveringFamily build_family_greedy(int n, const Rational& c, Direction d) {
  if (n < 1) throw ContractError("covering families need n >= 1");
  if (n > kMaxFamilyLength) {
    throw ResourceError("greedy covering families are limited to n <= " +
                        std::to_string(kMaxFamilyLength));
  }
  const Bound bound = make_bound(n, c, d);
  const Word universe = Word{1} << n;

  // gain[y] = number of still-uncovered x that y would cover.
  std::vector<std::int32_t> per_weight(n + 1, 0);
  for (int ky = 0; ky <= n; ++ky) {
    const auto row = binomial_row(ky);
    for (int kx = 0; kx <= ky; ++kx) {
      if (bound.ok(kx, ky)) per_weight[ky] += static_cast<std::int32_t>(row[kx]);
    }
  }
  std::vector<std::int32_t> gain(universe);
  for (Word y = 0; y < universe; ++y) gain[y] = per_weight[std::popcount(y)];

  std::vector<std::uint8_t> covered(universe, 0);
  std::vector<Word> chosen;
  std::uint64_t remaining = universe;
  while (remaining > 0) {
    Word best = 0;
    for (Word y = 1; y < universe; ++y) {
      if (gain[y] > gain[best]) best = y;
    }
    chosen.push_back(best);
    const int ky = std::popcount(best);
    // Walk every submask x of best.
    for (Word x = best;; x = (x - 1) & best) {
      if (!covered[x] && bound.ok(std::popcount(x), ky)) {
        covered[x] = 1;
        --remaining;
        for_each_cover(bound, x, [&](Word y) { --gain[y]; });
      }
      if (x == 0) break;
    }
  }

  std::sort(chosen.begin(), chosen.end());
  CoveringFamily family;
  family.n = n;
  family.c = c;
  family.direction = d;
  family.members.reserve(chosen.size());
  for (Word v : chosen) family.members.push_back(BitString::from_value(n, v));
  family.index_width = bits_for_count(family.members.size());
  return family;
}

bool verify_family(const CoveringFamily& family) {
  if (family.n < 1 || family.n > kMaxFamilyLength) return false;
  if (family.index_width != bits_for_count(family.members.size())) return false;
  const Bound bound = make_bound(family.n, family.c, family.direction);
  const std::uint64_t universe = std::uint64_t{1} << family.n;
  std::vector<std::uint8_t> covered(universe, 0);
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    const BitString& y = family.members[i];
    if (y.size() != family.n) return false;
    if (i > 0 && !(family.members[i - 1] < y)) return false;  // distinct
    const std::uint64_t ym = y.mask();
    const int ky = y.ones();
    for (std::uint64_t x = ym;; x = (x - 1) & ym) {
      if (bound.ok(std::popcount(x), ky)) covered[x] = 1;
      if (x == 0) break;
    }
  }
  return std::all_of(covered.begin(), covered.end(),
                     [](std::uint8_t v) { return v != 0; });
}

std::pair<int, BitString> lookup_cover(const CoveringFamily& family,
                                       const BitString& x) {
  if (x.size() != family.n) {
    throw ContractError("string length does not match the family");
  }
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    if (dominates(family.n, family.c, family.direction, x, family.members[i])) {
      return {static_cast<int>(i), family.members[i]};
    }
  }
  throw ContractError("family does not cover " + x.str());
}

std::shared_ptr<const CoveringFamily> cached_family(int n, const Rational& c,
                                                    Direction d) {
  using Key = std::tuple<int, std::int64_t, std::int64_t, int>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const CoveringFamily>> cache;
  const Key key{n, c.numerator(), c.denominator(), static_cast<int>(d)};
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto family =
      std::make_shared<const CoveringFamily>(build_family_greedy(n, c, d));
  cache.emplace(key, family);
  return family;
}

namespace {

// Replays a family member. Any malformed advice degrades to the all-ones
// output, which is feasible for every AOC instance.
class CoverAlgorithm : public OnlineAlgorithm {
 public:
  CoverAlgorithm(Rational c, Direction d, std::optional<int> known_n,
                 std::shared_ptr<const CoveringFamily> family = nullptr)
      : c_(c), d_(d), known_n_(known_n), family_(std::move(family)) {}

  bool next(std::span<const Request> seen, AdviceTape& tape) override {
    const int i = static_cast<int>(seen.size()) - 1;
    if (i == 0) start(tape);
    if (!valid_ || i >= member_.size()) return true;
    return member_[i];
  }

 private:
  void start(AdviceTape& tape) {
    std::uint64_t n = known_n_ ? static_cast<std::uint64_t>(*known_n_)
                               : tape.read_self_delimited();
    if (n < 1 || n > kMaxFamilyLength) return;
    if (!family_ || family_->n != static_cast<int>(n)) {
      family_ = cached_family(static_cast<int>(n), c_, d_);
    }
    const std::uint64_t index = tape.read_uint_fixed(family_->index_width);
    if (index >= family_->members.size()) return;
    member_ = family_->members[index];
    valid_ = true;
  }

  Rational c_;
  Direction d_;
  std::optional<int> known_n_;
  std::shared_ptr<const CoveringFamily> family_;
  BitString member_;
  bool valid_ = false;
};

}  // namespace

AdviceScheme covering_scheme(const Rational& c, Direction d,
                             std::optional<int> known_n) {
  AdviceScheme scheme;
  scheme.name = known_n ? "covering-fixed-n" : "covering";
  scheme.oracle = [c, d, known_n](const Instance& instance,
                                  const BitString& optimal_output,
                                  AdviceTape& tape) {
    const int n = instance.size();
    if (known_n && *known_n != n) {
      throw ContractError("instance length differs from the scheme's n");
    }
    if (!known_n) tape.write_self_delimited(static_cast<std::uint64_t>(n));
    const auto family = cached_family(n, c, d);
    tape.write_uint_fixed(lookup_cover(*family, optimal_output).first,
                          family->index_width);
  };
  scheme.make_algorithm = [c, d, known_n]() -> std::unique_ptr<OnlineAlgorithm> {
    return std::make_unique<CoverAlgorithm>(c, d, known_n);
  };
  return scheme;
}

Outcome run_unweighted_aoc(const Instance& instance,
                           const CoveringFamily& family,
                           const BitString& optimal_x, AdviceTape& tape) {
  if (family.n != instance.size()) {
    throw ContractError("family length does not match the instance");
  }
  if (!check_feasible(instance, optimal_x)) {
    throw ContractError("optimal_x is not feasible for the instance");
  }
  tape.write_uint_fixed(lookup_cover(family, optimal_x).first,
                        family.index_width);
  // Borrow the caller's family without taking ownership.
  std::shared_ptr<const CoveringFamily> borrowed(&family,
                                                 [](const CoveringFamily*) {});
  CoverAlgorithm algorithm(family.c, family.direction, family.n, borrowed);
  return evaluate_unweighted(instance, serve(instance, algorithm, tape));
}

}  // namespace advicebench
