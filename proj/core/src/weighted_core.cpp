#include "advicebench/weighted_core.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "advicebench/covering.hpp"
#include "advicebench/errors.hpp"
#include "advicebench/sparsify.hpp"

namespace advicebench {

namespace {

// Largest n a weighted algorithm accepts from the tape; anything bigger is
// treated as corrupt advice.
constexpr std::uint64_t kMaxAdvisedLength = 64;

double log2_sq(int n) {
  const double l = std::log2(std::max(2, n));
  return l * l;
}

std::vector<int> requests_in_bucket(const Instance& instance,
                                    const GeometricScale& scale,
                                    std::int64_t k) {
  std::vector<int> idx;
  for (int i = 0; i < instance.size(); ++i) {
    if (scale.bucket(instance.requests[i].weight) == k) idx.push_back(i);
  }
  return idx;
}

// Oracle: for j = 0..T the block for bucket m - j is its request count
// plus one (self-delimited) followed by the covering index of OPT's
// restriction to that bucket.
void write_bucket_blocks(const Instance& instance, const BitString& opt,
                         const GeometricScale& scale, std::int64_t m,
                         int threshold, const Rational& c, Direction d,
                         AdviceTape& tape) {
  for (int j = 0; j <= threshold; ++j) {
    const auto idx = requests_in_bucket(instance, scale, m - j);
    const int nb = static_cast<int>(idx.size());
    tape.write_self_delimited(static_cast<std::uint64_t>(nb) + 1);
    if (nb == 0) continue;
    BitString x(nb);
    for (int t = 0; t < nb; ++t) x.set(t, opt[idx[t]]);
    const auto family = cached_family(nb, c, d);
    tape.write_uint_fixed(lookup_cover(*family, x).first, family->index_width);
  }
}

// Algorithm side of the blocks: one family member per important bucket,
// replayed in arrival order.
class BucketReplay {
 public:
  void read(AdviceTape& tape, int threshold, const Rational& c, Direction d,
            std::uint64_t n) {
    members_.assign(threshold + 1, std::nullopt);
    used_.assign(threshold + 1, 0);
    for (int j = 0; j <= threshold; ++j) {
      const std::uint64_t len = tape.read_self_delimited();
      if (len < 1 || len - 1 > n || len - 1 > kMaxFamilyLength) return;
      const int nb = static_cast<int>(len - 1);
      if (nb == 0) continue;
      const auto family = cached_family(nb, c, d);
      const auto index = tape.read_uint_fixed(family->index_width);
      if (index < family->members.size()) members_[j] = family->members[index];
    }
  }

  // Next bit of bucket offset j, or nullopt when the advice ran out.
  std::optional<bool> take(int j) {
    if (j < 0 || j >= static_cast<int>(members_.size()) || !members_[j] ||
        used_[j] >= members_[j]->size()) {
      return std::nullopt;
    }
    return (*members_[j])[used_[j]++];
  }

 private:
  std::vector<std::optional<BitString>> members_;
  std::vector<int> used_;
};

double weight_of(std::span<const Request> seen) { return seen.back().weight; }

// ---------------------------------------------------------------- Max

class WeightedMaxAlgorithm : public OnlineAlgorithm {
 public:
  WeightedMaxAlgorithm(Rational c, Rational epsilon)
      : c_(c), epsilon_(epsilon), scale_(half_step_base(epsilon)) {}

  bool next(std::span<const Request> seen, AdviceTape& tape) override {
    const std::size_t i = seen.size();  // 1-based
    if (i == 1) {
      n_ = tape.read_self_delimited();
      if (n_ < 1 || n_ > kMaxAdvisedLength) return reject_all();
      if (max_verbatim(static_cast<int>(n_), epsilon_)) {
        verbatim_ = BitString(static_cast<int>(n_));
        for (int t = 0; t < verbatim_->size(); ++t) {
          verbatim_->set(t, tape.read_bit());
        }
      } else {
        start_ = tape.read_self_delimited();
      }
    }
    if (broken_) return true;
    if (verbatim_) return i <= n_ ? (*verbatim_)[static_cast<int>(i - 1)] : true;
    if (start_ < 1 || i < start_) return true;
    const std::int64_t k = scale_.bucket(weight_of(seen));
    if (i == start_) {
      const std::uint64_t shift = tape.read_self_delimited();
      if (shift < 1) return reject_all();
      m_ = k + static_cast<std::int64_t>(shift) - 1;
      threshold_ = scale_.threshold(static_cast<int>(n_));
      blocks_.read(tape, threshold_, c_, Direction::kMax, n_);
    }
    const WeightClass cls = classify_bucket(k, m_, threshold_);
    if (cls.tag != WeightTag::kImportant) return true;
    return blocks_.take(cls.offset).value_or(true);
  }

 private:
  bool reject_all() {
    broken_ = true;
    return true;
  }

  Rational c_;
  Rational epsilon_;
  GeometricScale scale_;
  std::uint64_t n_ = 0;
  std::uint64_t start_ = 0;
  std::int64_t m_ = 0;
  int threshold_ = 0;
  bool broken_ = false;
  std::optional<BitString> verbatim_;
  BucketReplay blocks_;
};

void weighted_max_oracle(const Rational& c, const Rational& epsilon,
                         const Instance& instance, const BitString& opt,
                         AdviceTape& tape) {
  if (is_minimization(instance.problem)) {
    throw ContractError("weighted Max algorithm needs a maximization problem");
  }
  const int n = instance.size();
  tape.write_self_delimited(static_cast<std::uint64_t>(n));
  if (max_verbatim(n, epsilon)) {
    for (int i = 0; i < n; ++i) tape.write_bit(opt[i]);
    return;
  }
  const GeometricScale scale(half_step_base(epsilon));
  int i_max = -1;
  for (int i = 0; i < n; ++i) {
    if (opt[i]) continue;
    if (i_max < 0 || instance.requests[i].weight > instance.requests[i_max].weight) {
      i_max = i;
    }
  }
  if (i_max < 0) {
    tape.write_self_delimited(static_cast<std::uint64_t>(n) + 1);
    return;
  }
  const std::int64_t m = scale.bucket(instance.requests[i_max].weight);
  const int threshold = scale.threshold(n);
  int first = -1;
  for (int i = 0; i < n && first < 0; ++i) {
    const auto k = scale.bucket(instance.requests[i].weight);
    if (classify_bucket(k, m, threshold).tag == WeightTag::kImportant) first = i;
  }
  const std::int64_t m_first = scale.bucket(instance.requests[first].weight);
  tape.write_self_delimited(static_cast<std::uint64_t>(first) + 1);
  tape.write_self_delimited(static_cast<std::uint64_t>(m - m_first) + 1);
  write_bucket_blocks(instance, opt, scale, m, threshold, c, Direction::kMax,
                      tape);
}

// ---------------------------------------------------------------- Min

class WeightedMinAlgorithm : public OnlineAlgorithm {
 public:
  WeightedMinAlgorithm(Rational c, Rational epsilon)
      : c_(c), epsilon_(epsilon), scale_(half_step_base(epsilon)) {}

  bool next(std::span<const Request> seen, AdviceTape& tape) override {
    const std::size_t i = seen.size();
    const std::int64_t k = scale_.bucket(weight_of(seen));
    if (i == 1) start(tape, k);
    if (broken_) return true;
    if (verbatim_) return i <= n_ ? (*verbatim_)[static_cast<int>(i - 1)] : true;
    const WeightClass cls = classify_bucket(k, m_, threshold_);
    switch (cls.tag) {
      case WeightTag::kUnimportant:
        return true;
      case WeightTag::kHuge:
        return false;
      case WeightTag::kImportant:
        return blocks_.take(cls.offset).value_or(true);
    }
    return true;
  }

 private:
  void start(AdviceTape& tape, std::int64_t first_bucket) {
    n_ = tape.read_self_delimited();
    if (n_ < 1 || n_ > kMaxAdvisedLength) {
      broken_ = true;
      return;
    }
    if (min_verbatim(static_cast<int>(n_), epsilon_)) {
      verbatim_ = BitString(static_cast<int>(n_));
      for (int t = 0; t < verbatim_->size(); ++t) verbatim_->set(t, tape.read_bit());
      return;
    }
    m_ = first_bucket + tape.read_signed_self_delimited();
    threshold_ = scale_.threshold(static_cast<int>(n_));
    blocks_.read(tape, threshold_, c_, Direction::kMin, n_);
  }

  Rational c_;
  Rational epsilon_;
  GeometricScale scale_;
  std::uint64_t n_ = 0;
  std::int64_t m_ = 0;
  int threshold_ = 0;
  bool broken_ = false;
  std::optional<BitString> verbatim_;
  BucketReplay blocks_;
};

void weighted_min_oracle(const Rational& c, const Rational& epsilon,
                         const Instance& instance, const BitString& opt,
                         AdviceTape& tape) {
  if (!is_minimization(instance.problem)) {
    throw ContractError("weighted Min algorithm needs a minimization problem");
  }
  const int n = instance.size();
  tape.write_self_delimited(static_cast<std::uint64_t>(n));
  if (min_verbatim(n, epsilon)) {
    for (int i = 0; i < n; ++i) tape.write_bit(opt[i]);
    return;
  }
  const GeometricScale scale(half_step_base(epsilon));
  std::optional<std::int64_t> m;
  std::int64_t lowest = std::numeric_limits<std::int64_t>::max();
  for (int i = 0; i < n; ++i) {
    const auto k = scale.bucket(instance.requests[i].weight);
    lowest = std::min(lowest, k);
    if (opt[i] && (!m || k > *m)) m = k;
  }
  // With an empty optimum every request is made Huge and rejected.
  const std::int64_t top = m ? *m : lowest - 1;
  const std::int64_t first = scale.bucket(instance.requests[0].weight);
  tape.write_signed_self_delimited(top - first);
  write_bucket_blocks(instance, opt, scale, top, scale.threshold(n), c,
                      Direction::kMin, tape);
}

// ---------------------------------------------------------- best bucket

const Rational kBestBucketBase{3, 2};

// Maps requests of the original sequence onto the subsequence fed to a
// base algorithm, re-indexing vertex arrivals.
class Subsequence {
 public:
  std::span<const Request> push(const Request& r, int original_index) {
    if (static_cast<int>(map_.size()) <= original_index) {
      map_.resize(original_index + 1, -1);
    }
    Request copy = r;
    copy.weight = 1.0;
    if (auto* arrival = std::get_if<VertexArrival>(&copy.payload)) {
      std::vector<int> kept;
      for (int j : arrival->earlier_neighbors) {
        if (j < static_cast<int>(map_.size()) && map_[j] >= 0) {
          kept.push_back(map_[j]);
        }
      }
      arrival->earlier_neighbors = std::move(kept);
    }
    map_[original_index] = static_cast<int>(requests_.size());
    requests_.push_back(std::move(copy));
    return requests_;
  }

 private:
  std::vector<int> map_;
  std::vector<Request> requests_;
};

class BestBucketAlgorithm : public OnlineAlgorithm {
 public:
  explicit BestBucketAlgorithm(AdviceScheme base)
      : base_(std::move(base)), scale_(kBestBucketBase) {}

  bool next(std::span<const Request> seen, AdviceTape& tape) override {
    const std::size_t i = seen.size();
    if (i == 1) start_ = tape.read_self_delimited();
    if (start_ < 1 || i < start_) return true;
    const std::int64_t k = scale_.bucket(weight_of(seen));
    if (i == start_) {
      bucket_ = k;
      algorithm_ = base_.make_algorithm();
    }
    if (k != bucket_) return true;
    const auto sub = sub_.push(seen.back(), static_cast<int>(i - 1));
    return algorithm_->next(sub, tape);
  }

 private:
  AdviceScheme base_;
  GeometricScale scale_;
  std::uint64_t start_ = 0;
  std::int64_t bucket_ = 0;
  std::unique_ptr<OnlineAlgorithm> algorithm_;
  Subsequence sub_;
};

void best_bucket_oracle(const AdviceScheme& base, const Instance& instance,
                        const BitString& opt, AdviceTape& tape) {
  if (is_minimization(instance.problem)) {
    throw ContractError("best-bucket wrapper needs a maximization problem");
  }
  const int n = instance.size();
  const GeometricScale scale(kBestBucketBase);
  std::vector<std::int64_t> bucket(n);
  std::optional<std::int64_t> m;
  for (int i = 0; i < n; ++i) {
    bucket[i] = scale.bucket(instance.requests[i].weight);
    if (!opt[i] && (!m || bucket[i] > *m)) m = bucket[i];
  }
  if (!m) {
    tape.write_self_delimited(static_cast<std::uint64_t>(n) + 1);
    return;
  }
  const int threshold = scale.threshold(n);
  std::int64_t best = *m - threshold;
  double best_weight = -1.0;
  for (std::int64_t k = *m - threshold; k <= *m; ++k) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!opt[i] && bucket[i] == k) total += instance.requests[i].weight;
    }
    if (total > best_weight) {
      best = k;
      best_weight = total;
    }
  }
  std::vector<int> idx;
  for (int i = 0; i < n; ++i) {
    if (bucket[i] == best) idx.push_back(i);
  }
  if (idx.empty()) {
    // Only possible when every important bucket is empty, which the
    // bucket holding OPT's heaviest request rules out.
    throw ContractError("best bucket has no requests");
  }
  tape.write_self_delimited(static_cast<std::uint64_t>(idx.front()) + 1);
  const Instance sub = restrict_to(unweighted(instance), idx);
  base.oracle(sub, brute_force_opt(sub).output, tape);
}

// Greedy: accept while the accepted set stays feasible on the prefix.
class GreedyAlgorithm : public OnlineAlgorithm {
 public:
  explicit GreedyAlgorithm(Problem problem) : problem_(problem) {}

  bool next(std::span<const Request> seen, AdviceTape&) override {
    Instance prefix;
    prefix.problem = problem_;
    prefix.requests.assign(seen.begin(), seen.end());
    for (const auto& r : seen) {
      if (const auto* p = std::get_if<Subpath>(&r.payload)) {
        prefix.path_length = std::max(prefix.path_length, p->end);
      }
    }
    const int n = prefix.size();
    BitString y = BitString::all_ones(n);
    for (int j : accepted_) y.set(j, false);
    y.set(n - 1, false);
    if (check_feasible(prefix, y)) {
      accepted_.push_back(n - 1);
      return false;
    }
    return true;
  }

 private:
  Problem problem_;
  std::vector<int> accepted_;
};

void fill_ratio(RunReport& r, bool minimize) {
  r.ratio = r.alg_feasible ? competitive_ratio(minimize, r.alg_score, r.opt_score)
                           : std::numeric_limits<double>::infinity();
}

void check_guarantee(RunReport& r, double bound, const char* what) {
  if (!r.alg_feasible) {
    r.violations.push_back("infeasible output");
  } else if (r.ratio > bound * (1 + 1e-12)) {
    r.violations.push_back(std::string("ratio above ") + what);
  }
}

}  // namespace

double competitive_ratio(bool minimize, double alg, double opt) {
  if (alg == opt) return 1.0;
  if (minimize) {
    return opt == 0 ? std::numeric_limits<double>::infinity() : alg / opt;
  }
  return alg == 0 ? std::numeric_limits<double>::infinity() : opt / alg;
}

bool max_verbatim(int n, const Rational& epsilon) {
  return Rational(n) < (Rational(2) + 2 * epsilon) / epsilon;
}

bool min_verbatim(int n, const Rational& epsilon) {
  return Rational(n) < (Rational(2) + epsilon) / epsilon;
}

double max_advice_bound(int n, const Rational& c, const Rational& epsilon,
                        double k1) {
  return std::ceil(b_bound(n, c)) + k1 / to_double(epsilon) * log2_sq(n);
}

double min_advice_bound(int n, const Rational& c, const Rational& epsilon,
                        double wmin, double wmax, double k1) {
  const double inv_eps = 1.0 / to_double(epsilon);
  const double spread = std::log2(2.0 + inv_eps * std::log2(std::max(1.0, wmax / wmin)));
  return std::ceil(b_bound(n, c)) + k1 * (inv_eps * log2_sq(n) + spread);
}

double best_bucket_advice_bound(int n, double base_bits, double k) {
  return base_bits + k * std::max(1.0, std::log2(n));
}

double best_bucket_ratio_bound(int n, const Rational& base_c) {
  if (n < 2) return std::numeric_limits<double>::infinity();
  const int buckets = GeometricScale(kBestBucketBase).threshold(n) + 1;
  return to_double(base_c) * to_double(kBestBucketBase) * buckets /
         (1.0 - 1.0 / n);
}

AdviceScheme weighted_max_scheme(const Rational& c, const Rational& epsilon) {
  AdviceScheme s;
  s.name = "weighted-max";
  s.oracle = [c, epsilon](const Instance& inst, const BitString& opt,
                          AdviceTape& tape) {
    weighted_max_oracle(c, epsilon, inst, opt, tape);
  };
  s.make_algorithm = [c, epsilon]() -> std::unique_ptr<OnlineAlgorithm> {
    return std::make_unique<WeightedMaxAlgorithm>(c, epsilon);
  };
  return s;
}

AdviceScheme weighted_min_scheme(const Rational& c, const Rational& epsilon) {
  AdviceScheme s;
  s.name = "weighted-min";
  s.oracle = [c, epsilon](const Instance& inst, const BitString& opt,
                          AdviceTape& tape) {
    weighted_min_oracle(c, epsilon, inst, opt, tape);
  };
  s.make_algorithm = [c, epsilon]() -> std::unique_ptr<OnlineAlgorithm> {
    return std::make_unique<WeightedMinAlgorithm>(c, epsilon);
  };
  return s;
}

BaseAlgorithm greedy_base(Problem problem) {
  if (is_minimization(problem)) {
    throw ContractError("greedy base is defined for maximization problems");
  }
  BaseAlgorithm base;
  base.scheme.name = "greedy";
  base.scheme.oracle = [](const Instance&, const BitString&, AdviceTape&) {};
  base.scheme.make_algorithm = [problem]() -> std::unique_ptr<OnlineAlgorithm> {
    return std::make_unique<GreedyAlgorithm>(problem);
  };
  base.c = Rational(2);
  return base;
}

BaseAlgorithm covering_base(const Rational& c) {
  BaseAlgorithm base;
  base.scheme = covering_scheme(c, Direction::kMax);
  base.c = c;
  base.advice_bits = [c](int n) {
    return static_cast<double>(self_delimited_size(static_cast<std::uint64_t>(n)) +
                               cached_family(n, c, Direction::kMax)->index_width);
  };
  return base;
}

AdviceScheme best_bucket_scheme(const BaseAlgorithm& base) {
  AdviceScheme s;
  s.name = "best-bucket/" + base.scheme.name;
  auto inner = base.scheme;
  s.oracle = [inner](const Instance& inst, const BitString& opt,
                     AdviceTape& tape) {
    best_bucket_oracle(inner, inst, opt, tape);
  };
  s.make_algorithm = [inner]() -> std::unique_ptr<OnlineAlgorithm> {
    return std::make_unique<BestBucketAlgorithm>(inner);
  };
  return s;
}

RunReport run_scheme(const Instance& instance, const AdviceScheme& scheme,
                     AdviceTape& tape) {
  const auto t0 = std::chrono::steady_clock::now();
  const Outcome opt = brute_force_opt(instance);
  scheme.oracle(instance, opt.output, tape);
  auto algorithm = scheme.make_algorithm();
  const BitString y = serve(instance, *algorithm, tape);
  const Outcome alg = evaluate(instance, y);

  RunReport r;
  r.problem = std::string(to_string(instance.problem));
  r.n = instance.size();
  r.algorithm = scheme.name;
  r.alg_feasible = alg.feasible;
  r.alg_score = alg.score;
  r.opt_score = opt.score;
  fill_ratio(r, is_minimization(instance.problem));
  r.bits_read = tape.bits_read();
  r.output = y.str();
  r.tape_hex = tape.to_hex();
  r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return r;
}

RunReport covering_run(const Instance& instance, const Rational& c,
                       AdviceTape& tape) {
  const Direction d = direction_of(instance.problem);
  RunReport r = run_scheme(unweighted(instance), covering_scheme(c, d), tape);
  r.params = {{"c", to_string(c)}};
  r.advice_bound = self_delimited_size(static_cast<std::uint64_t>(r.n)) +
                   cached_family(r.n, c, d)->index_width;
  check_guarantee(r, to_double(c), "c");
  return r;
}

RunReport weighted_max_run(const Instance& instance, const Rational& c,
                   const Rational& epsilon, AdviceTape& tape) {
  if (is_minimization(instance.problem)) {
    throw ContractError("weighted Max run needs a maximization problem");
  }
  SparsifyParams::make(instance.size(), epsilon, half_step_base(epsilon), 0);
  RunReport r = run_scheme(instance, weighted_max_scheme(c, epsilon), tape);
  r.algorithm = "weighted-max";
  r.params = {{"c", to_string(c)}, {"epsilon", to_string(epsilon)}};
  r.advice_bound = max_advice_bound(r.n, c, epsilon);
  check_guarantee(r, to_double((1 + epsilon) * c), "(1+eps)c");
  return r;
}

RunReport weighted_min_run(const Instance& instance, const Rational& c,
                   const Rational& epsilon, double wmin, double wmax,
                   AdviceTape& tape) {
  if (!is_minimization(instance.problem)) {
    throw ContractError("weighted Min run needs a minimization problem");
  }
  if (!(wmin > 0) || wmax < wmin) throw DomainError("need 0 < wmin <= wmax");
  for (const auto& req : instance.requests) {
    if (req.weight < wmin || req.weight > wmax) {
      throw ContractError("request weight outside [wmin, wmax]");
    }
  }
  SparsifyParams::make(instance.size(), epsilon, half_step_base(epsilon), 0);
  RunReport r = run_scheme(instance, weighted_min_scheme(c, epsilon), tape);
  r.algorithm = "weighted-min";
  r.params = {{"c", to_string(c)},
              {"epsilon", to_string(epsilon)},
              {"wmin", std::to_string(wmin)},
              {"wmax", std::to_string(wmax)}};
  r.advice_bound = min_advice_bound(r.n, c, epsilon, wmin, wmax);
  check_guarantee(r, to_double((1 + epsilon) * c), "(1+eps)c");
  return r;
}

RunReport best_bucket_run(const Instance& instance, const BaseAlgorithm& base,
                   AdviceTape& tape) {
  if (is_minimization(instance.problem)) {
    throw ContractError("best-bucket run needs a maximization problem");
  }
  RunReport r = run_scheme(instance, best_bucket_scheme(base), tape);
  r.algorithm = "best-bucket/" + base.scheme.name;
  r.params = {{"c", to_string(base.c)}, {"epsilon", "1/2"}};
  r.advice_bound = best_bucket_advice_bound(r.n, base.advice_bits(r.n));
  check_guarantee(r, best_bucket_ratio_bound(r.n, base.c),
                  "best-bucket guarantee");
  return r;
}

}  // namespace advicebench
