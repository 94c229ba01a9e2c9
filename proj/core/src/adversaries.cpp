#include "advicebench/adversaries.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "advicebench/errors.hpp"

namespace advicebench {

namespace {

constexpr int kMaxGuessingLength = 16;

// Advice class of a run: the bits the algorithm consumed, padded with the
// zeros an infinite tape would supply, cut to the budget.
std::string advice_class(const AdviceTape& tape, int budget) {
  const std::string written = tape.written_string();
  std::string key(static_cast<std::size_t>(budget), '0');
  const std::size_t used = std::min<std::size_t>(tape.bits_read(), budget);
  for (std::size_t i = 0; i < used && i < written.size(); ++i) key[i] = written[i];
  return key;
}

struct Simulation {
  BitString output;
  std::string key;
};

Simulation simulate(const AdviceScheme& scheme, const Instance& instance,
                    const BitString& optimal, int budget) {
  AdviceTape full;
  scheme.oracle(instance, optimal, full);
  AdviceTape tape = full.truncated(static_cast<std::size_t>(budget));
  auto algorithm = scheme.make_algorithm();
  Simulation sim;
  sim.output = serve(instance, *algorithm, tape);
  sim.key = advice_class(tape, budget);
  return sim;
}

class ConstantAlgorithm : public OnlineAlgorithm {
 public:
  explicit ConstantAlgorithm(bool bit) : bit_(bit) {}
  bool next(std::span<const Request>, AdviceTape&) override { return bit_; }

 private:
  bool bit_;
};

class VerbatimAlgorithm : public OnlineAlgorithm {
 public:
  bool next(std::span<const Request>, AdviceTape& tape) override {
    return tape.read_bit();
  }
};

class AcceptAtAlgorithm : public OnlineAlgorithm {
 public:
  explicit AcceptAtAlgorithm(std::optional<int> target) : target_(target) {}
  bool next(std::span<const Request> seen, AdviceTape& tape) override {
    if (!target_) {
      target_ = static_cast<int>(tape.read_self_delimited());
    }
    // Max-problem output: 0 accepts.
    return static_cast<int>(seen.size()) != *target_;
  }

 private:
  std::optional<int> target_;
};

Rational pow2(int e) {
  return e >= 0 ? Rational(std::int64_t{1} << e)
                : Rational(1, std::int64_t{1} << -e);
}

}  // namespace

Rational ExponentWeight::value() const {
  return Rational(numerator, std::int64_t{1} << log2_denominator);
}

double ExponentWeight::as_double() const {
  return std::ldexp(static_cast<double>(numerator), -log2_denominator);
}

bool operator<(const ExponentWeight& a, const ExponentWeight& b) {
  const int d = std::max(a.log2_denominator, b.log2_denominator);
  return (a.numerator << (d - a.log2_denominator)) <
         (b.numerator << (d - b.log2_denominator));
}

bool operator==(const ExponentWeight& a, const ExponentWeight& b) {
  return !(a < b) && !(b < a);
}

std::vector<ExponentWeight> string_guessing_weights(const BitString& x) {
  const int n = x.size();
  if (n < 1 || n > 62) throw ContractError("string length must be in [1, 62]");
  std::vector<ExponentWeight> q(n);
  std::int64_t num = std::int64_t{1} << (n - 1);  // 1/2 = 2^(n-1) / 2^n
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      const std::int64_t step = std::int64_t{1} << (n - 1 - i);  // 2^-(i+1)
      num += x[i - 1] ? step : -step;
    }
    q[i] = ExponentWeight{num, n};
  }
  return q;
}

Instance string_guessing_instance(const BitString& x) {
  const auto q = string_guessing_weights(x);
  Instance inst;
  inst.problem = Problem::kMinAsg;
  for (int i = 0; i < x.size(); ++i) {
    inst.requests.push_back(Request{AsgBit{x[i]}, q[i].as_double()});
  }
  return inst;
}

double log2_weight_sum(const std::vector<ExponentWeight>& q,
                       const BitString& selected, double log2_a) {
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < selected.size(); ++i) {
    if (selected[i]) top = std::max(top, q[i].as_double() * log2_a);
  }
  if (std::isinf(top)) return top;
  double sum = 0.0;
  for (int i = 0; i < selected.size(); ++i) {
    if (selected[i]) sum += std::exp2(q[i].as_double() * log2_a - top);
  }
  return top + std::log2(sum);
}

LowerBoundWitness string_guessing_verify(const AdviceScheme& scheme, int n,
                                         int budget_bits, double log2_a) {
  if (n < 1 || n > kMaxGuessingLength) {
    throw ResourceError("string guessing verifier supports 1 <= n <= 16");
  }
  if (budget_bits < 0) throw ContractError("advice budget must be >= 0");
  if (!(log2_a > 0)) throw DomainError("log2(a) must be positive");

  std::map<std::string, std::pair<BitString, BitString>> seen;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t v = 1; v < count; ++v) {
    const BitString x = BitString::from_value(n, v);
    const Instance inst = string_guessing_instance(x);
    Simulation sim = simulate(scheme, inst, x, budget_bits);
    auto [it, fresh] = seen.try_emplace(sim.key, x, sim.output);
    if (fresh) continue;

    const BitString& z = it->second.first;
    const BitString& z_out = it->second.second;
    int d = 0;
    while (x[d] == z[d]) ++d;
    // Rounds 1..d reveal the same history, so equal advice forces an
    // equal guess in round d.
    if (sim.output.prefix(d + 1) != z_out.prefix(d + 1)) {
      throw ContractError("algorithm output differs on a shared prefix");
    }
    const bool guess = sim.output[d];
    const bool x_err = guess ? !x[d] : x[d];
    LowerBoundWitness w;
    w.x = x_err ? x : z;
    w.colliding_x = x_err ? z : x;
    w.diverge_position = d;
    w.advice_class = sim.key;
    const BitString& y = x_err ? sim.output : z_out;
    if (!w.x.is_below(y)) {
      w.infeasible = true;
      return w;
    }
    const auto q = string_guessing_weights(w.x);
    w.log2_ratio = log2_weight_sum(q, y, log2_a) - log2_weight_sum(q, w.x, log2_a);
    return w;
  }
  throw InapplicableError("every input received distinct advice within " +
                          std::to_string(budget_bits) + " bits");
}

AdviceScheme guess_zero_scheme() {
  AdviceScheme s;
  s.name = "guess-zero";
  s.oracle = [](const Instance&, const BitString&, AdviceTape&) {};
  s.make_algorithm = []() -> std::unique_ptr<OnlineAlgorithm> {
    return std::make_unique<ConstantAlgorithm>(false);
  };
  return s;
}

AdviceScheme verbatim_guess_scheme() {
  AdviceScheme s;
  s.name = "verbatim";
  s.oracle = [](const Instance&, const BitString& opt, AdviceTape& tape) {
    for (int i = 0; i < opt.size(); ++i) tape.write_bit(opt[i]);
  };
  s.make_algorithm = []() -> std::unique_ptr<OnlineAlgorithm> {
    return std::make_unique<VerbatimAlgorithm>();
  };
  return s;
}

std::vector<Instance> geometric_family(Problem problem, int n, double f) {
  if (!(f > 1)) throw DomainError("f must exceed 1");
  if (n < 1) throw ContractError("n must be >= 1");
  std::vector<Request> full;
  for (int i = 0; i < n; ++i) {
    Request r;
    r.weight = std::pow(f, i + 1);
    switch (problem) {
      case Problem::kIndependentSet: {
        VertexArrival a;
        for (int j = 0; j < i; ++j) a.earlier_neighbors.push_back(j);
        r.payload = a;
        break;
      }
      case Problem::kClique:
        r.payload = VertexArrival{};
        break;
      case Problem::kMatching:
        r.payload = Edge{0, i + 1};
        break;
      case Problem::kDisjointPath:
        r.payload = Subpath{i + 1, i + 1 + n};
        break;
      default:
        throw ContractError("geometric family is defined for IS, clique, "
                            "matching and disjoint paths");
    }
    full.push_back(std::move(r));
  }
  std::vector<Instance> out;
  for (int len = 1; len <= n; ++len) {
    Instance inst;
    inst.problem = problem;
    inst.path_length = problem == Problem::kDisjointPath ? 2 * n : 0;
    inst.requests.assign(full.begin(), full.begin() + len);
    out.push_back(std::move(inst));
  }
  return out;
}

int geometric_family_budget(int n) {
  if (n < 1) throw ContractError("n must be >= 1");
  return std::max(0, static_cast<int>(std::bit_width(static_cast<unsigned>(n))) - 2);
}

PrefixWitness geometric_family_verify(Problem problem, int n, double f,
                                      const AdviceScheme& scheme,
                                      int budget_bits) {
  if (n > kMaxBruteForceRequests) {
    throw ResourceError("prefix family verifier is limited to n <= 20");
  }
  const auto family = geometric_family(problem, n, f);
  std::map<std::string, int> first_with;
  std::vector<Simulation> sims;
  for (int len = 1; len <= n; ++len) {
    const Instance& inst = family[len - 1];
    sims.push_back(simulate(scheme, inst, brute_force_opt(inst).output,
                            budget_bits));
    auto [it, fresh] = first_with.try_emplace(sims.back().key, len);
    if (fresh) continue;

    PrefixWitness w;
    w.shorter = it->second;
    w.longer = len;
    w.advice_class = sims.back().key;
    const Simulation& a = sims[w.shorter - 1];
    const Simulation& b = sims.back();
    if (a.output != b.output.prefix(w.shorter)) {
      throw ContractError("algorithm output differs on a shared prefix");
    }
    const Instance& short_inst = family[w.shorter - 1];
    const Instance& long_inst = family[len - 1];
    const Outcome short_run = evaluate(short_inst, a.output);
    const Outcome long_run = evaluate(long_inst, b.output);
    // The shorter prefix fails if it accepted nothing; otherwise the
    // longer one is stuck with an early, light request.
    if (!short_run.feasible) {
      w.erring = w.shorter;
      w.infeasible = true;
    } else if (short_run.score == 0) {
      w.erring = w.shorter;
      w.unbounded = true;
    } else if (!long_run.feasible) {
      w.erring = w.longer;
      w.infeasible = true;
    } else {
      w.erring = w.longer;
      const double opt = brute_force_opt(long_inst).score;
      w.log2_ratio = std::log2(opt) - std::log2(long_run.score);
    }
    return w;
  }
  throw InapplicableError("every prefix received distinct advice within " +
                          std::to_string(budget_bits) + " bits");
}

bool StarExpectations::identities_hold() const {
  if (e_opt != Rational(k + 1)) return false;
  return std::all_of(e_det.begin(), e_det.end(),
                     [](const Rational& r) { return r == Rational(2); });
}

StarExpectations star_expectations(const Rational& c) {
  const Rational k_rat = 2 * c - 1;
  if (k_rat.denominator() != 1 || k_rat.numerator() < 1 ||
      k_rat.numerator() > 60) {
    throw DomainError("2c - 1 must be a positive integer (at most 60)");
  }
  StarExpectations e;
  e.k = static_cast<int>(k_rat.numerator());
  for (int j = 1; j <= e.k; ++j) {
    e.distribution.push_back(j < e.k ? pow2(-j) : pow2(-(e.k - 1)));
  }
  e.e_opt = Rational(0);
  for (int j = 1; j <= e.k; ++j) e.e_opt += e.distribution[j - 1] * pow2(j);
  Rational tail(0);  // Pr(X >= j), accumulated from the top
  e.e_det.assign(e.k, Rational(0));
  for (int j = e.k; j >= 1; --j) {
    tail += e.distribution[j - 1];
    e.e_det[j - 1] = tail * pow2(j);
  }
  return e;
}

int sample_star_length(int k, SplitMix64& rng) {
  int x = 1;
  while (x < k && (rng() >> 63) != 0) ++x;
  return x;
}

StarMonteCarlo star_monte_carlo(const Rational& c, std::int64_t samples,
                                std::uint64_t seed) {
  if (samples < 2) throw ContractError("need at least two samples");
  const int k = star_expectations(c).k;
  SplitMix64 rng(seed);
  double sum_opt = 0, sq_opt = 0;
  std::vector<double> sum_det(k, 0), sq_det(k, 0);
  for (std::int64_t s = 0; s < samples; ++s) {
    const int x = sample_star_length(k, rng);
    const double opt = std::ldexp(1.0, x);
    sum_opt += opt;
    sq_opt += opt * opt;
    for (int j = 1; j <= x; ++j) {
      const double det = std::ldexp(1.0, j);
      sum_det[j - 1] += det;
      sq_det[j - 1] += det * det;
    }
  }
  const double ns = static_cast<double>(samples);
  auto se = [ns](double sum, double sq) {
    const double mean = sum / ns;
    const double var = (sq - ns * mean * mean) / (ns - 1);
    return std::sqrt(std::max(0.0, var) / ns);
  };
  StarMonteCarlo mc;
  mc.samples = samples;
  mc.mean_opt = sum_opt / ns;
  mc.se_opt = se(sum_opt, sq_opt);
  for (int j = 0; j < k; ++j) {
    mc.mean_det.push_back(sum_det[j] / ns);
    mc.se_det.push_back(se(sum_det[j], sq_det[j]));
  }
  return mc;
}

Instance star_instance(int x) {
  if (x < 1 || x > 60) throw ContractError("star length must be in [1, 60]");
  Instance inst;
  inst.problem = Problem::kMatching;
  for (int i = 1; i <= x; ++i) {
    inst.requests.push_back(Request{Edge{0, i}, std::ldexp(1.0, i)});
  }
  return inst;
}

AdviceScheme accept_jth_scheme(int j) {
  AdviceScheme s;
  s.name = "accept-" + std::to_string(j);
  s.oracle = [](const Instance&, const BitString&, AdviceTape&) {};
  s.make_algorithm = [j]() -> std::unique_ptr<OnlineAlgorithm> {
    return std::make_unique<AcceptAtAlgorithm>(j);
  };
  return s;
}

AdviceScheme accept_last_scheme() {
  AdviceScheme s;
  s.name = "accept-last";
  s.oracle = [](const Instance& inst, const BitString&, AdviceTape& tape) {
    tape.write_self_delimited(static_cast<std::uint64_t>(inst.size()));
  };
  s.make_algorithm = []() -> std::unique_ptr<OnlineAlgorithm> {
    return std::make_unique<AcceptAtAlgorithm>(std::nullopt);
  };
  return s;
}

}  // namespace advicebench
