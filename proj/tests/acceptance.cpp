// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "advicebench/adversaries.hpp"
#include "advicebench/covering.hpp"
#include "advicebench/errors.hpp"
#include "advicebench/harness.hpp"
#include "advicebench/reductions.hpp"
#include "advicebench/scheduling.hpp"
#include "advicebench/sparsify.hpp"
#include "advicebench/weighted_core.hpp"

using namespace advicebench;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const char* name, double limit_s,
               const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(t0);
  if (limit_s > 0) {
    c.expect(elapsed < limit_s, "runtime " + std::to_string(elapsed) + " s over limit");
  }
  if (!c.ok) ++failures;
  std::printf("%s %2d %-34s %8.2fs  %s%s%s\n", c.ok ? "PASS" : "FAIL", id, name, elapsed,
              c.detail.str().c_str(), c.ok ? "" : "  first failure: ",
              c.ok ? "" : c.first_failure.c_str());
  std::fflush(stdout);
}

// Runs body(i) for i in [0, count) on all cores.
void parallel_for(int count, const std::function<void(int)>& body) {
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i; (i = next.fetch_add(1)) < count;) body(i);
  };
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
}

double log2_sq(int n) {
  const double l = std::log2(static_cast<double>(n));
  return l * l;
}

std::vector<GeneratorSpec> seeded(GeneratorSpec base, int count) {
  std::vector<GeneratorSpec> specs;
  for (int s = 1; s <= count; ++s) {
    base.seed = static_cast<std::uint64_t>(s);
    specs.push_back(base);
  }
  return specs;
}

// One report per spec (trial 0 of each seed).
std::vector<RunReport> run_all(const std::vector<GeneratorSpec>& specs,
                               std::string_view algorithm, const Params& params) {
  return batch(specs, algorithm, params, 1).reports;
}

// ---------------------------------------------------------------------------

void star_expectations_exact(Check& c) {
  for (int ci = 1; ci <= 10; ++ci) {
    const auto e = star_expectations(Rational(ci));
    const int k = 2 * ci - 1;
    c.expect(e.k == k, "k for c=" + std::to_string(ci));
    c.expect(e.e_opt == Rational(k + 1), "E[OPT] for c=" + std::to_string(ci));
    c.expect(static_cast<int>(e.e_det.size()) == k, "E[DET] length");
    for (const auto& d : e.e_det) c.expect(d == Rational(2), "E[DET_j] = 2");
    // Recompute from the law Pr(X=j) = 2^-j (j<k), 2^-(k-1) (j=k).
    Rational opt(0);
    for (int j = 1; j <= k; ++j) {
      const Rational pj(1, std::int64_t{1} << (j < k ? j : k - 1));
      opt += pj * Rational(std::int64_t{1} << j);
      Rational tail(0);
      for (int t = j; t <= k; ++t) tail += Rational(1, std::int64_t{1} << (t < k ? t : k - 1));
      c.expect(tail * Rational(std::int64_t{1} << j) == Rational(2), "tail identity");
    }
    c.expect(opt == Rational(k + 1), "independent E[OPT]");
  }
  const auto mc = star_monte_carlo(Rational(2), 1'000'000, 2024);
  c.expect(std::abs(mc.mean_opt - 4.0) <= 3 * mc.se_opt, "Monte-Carlo E[OPT]");
  for (std::size_t j = 0; j < mc.mean_det.size(); ++j) {
    c.expect(std::abs(mc.mean_det[j] - 2.0) <= 3 * mc.se_det[j], "Monte-Carlo E[DET]");
  }
  c.detail << "mc E[OPT]=" << mc.mean_opt << "+-" << mc.se_opt;
}

void string_guessing_lower_bound(Check& c) {
  const int n = 8, b = 7;
  const double log2a = 2048;
  const double target = log2a * std::ldexp(1.0, -n) - std::log2(n);  // log2(2^8 / 8) = 5
  c.expect(target == 5.0, "target arithmetic");
  const std::pair<const char*, AdviceScheme> algs[] = {
      {"guess-zero", guess_zero_scheme()},
      {"covering", covering_scheme(Rational(2), Direction::kMin, n)},
  };
  for (const auto& [name, scheme] : algs) {
    const auto w = string_guessing_verify(scheme, n, b, log2a);
    c.expect(w.x != w.colliding_x, std::string(name) + " witness pair");
    c.expect(w.infeasible || w.log2_ratio >= target, std::string(name) + " ratio");
    c.detail << name << ":" << (w.infeasible ? std::string("infeasible")
                                              : std::to_string(w.log2_ratio))
             << " ";
  }
}

void observation_one(Check& c) {
  long checked = 0;
  for (int n = 1; n <= 12; ++n) {
    const std::int64_t den = std::int64_t{1} << n;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const BitString x = BitString::from_mask(n, m);
      const auto q = string_guessing_weights(x);
      // Numerators over 2^n from the recurrence.
      std::vector<std::int64_t> num(n);
      num[0] = den / 2;
      for (int i = 1; i < n; ++i) {
        const std::int64_t step = den >> (i + 1);
        num[i] = num[i - 1] + (x[i - 1] ? step : -step);
      }
      for (int i = 0; i < n; ++i) {
        c.expect(q[i].value() == Rational(num[i], den), "library q matches recurrence");
        for (int j = i + 1; j < n; ++j) {
          // (a) x_i = 0: q_j <= q_i - 2^-n.  (b) x_i = 1: q_j >= q_i + 2^-n.
          if (x[i]) {
            c.expect(num[j] >= num[i] + 1, "one bit: later q at least q_i + 2^-n");
          } else {
            c.expect(num[j] <= num[i] - 1, "zero bit: later q at most q_i - 2^-n");
          }
          ++checked;
        }
      }
    }
  }
  c.detail << checked << " pairs";
}

void covering_strictness(Check& c) {
  for (int n : {6, 8, 10}) {
    const auto fmin = cached_family(n, Rational(2), Direction::kMin);
    const auto fmax = cached_family(n, Rational(2), Direction::kMax);
    Instance edgeless;
    edgeless.problem = Problem::kIndependentSet;
    for (int i = 0; i < n; ++i) edgeless.requests.push_back({VertexArrival{}, 1.0});
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const BitString x = BitString::from_mask(n, m);
      Instance asg;
      asg.problem = Problem::kMinAsg;
      for (int i = 0; i < n; ++i) asg.requests.push_back({AsgBit{x[i]}, 1.0});
      AdviceTape t1;
      const Outcome lo = run_unweighted_aoc(asg, *fmin, x, t1);
      c.expect(lo.feasible, "min run feasible");
      c.expect(lo.output.ones() <= 2 * x.ones(), "ones(y) <= 2 ones(x)");
      AdviceTape t2;
      const Outcome hi = run_unweighted_aoc(edgeless, *fmax, x, t2);
      c.expect(hi.feasible, "max run feasible");
      c.expect(2 * hi.output.zeros() >= x.zeros(), "zeros(y) >= zeros(x)/2");
    }
    c.detail << "|F" << n << "|=" << fmin->members.size() << "/" << fmax->members.size() << " ";
  }
}

void weighted_max_desk(Check& c) {
  const int n = 18;
  const Rational eps(1, 2);
  GeneratorSpec spec;
  spec.problem = Problem::kIndependentSet;
  spec.n = n;
  spec.p = 0.5;
  spec.weight_decades = 6;
  const auto reports = run_all(seeded(spec, 200), "weighted-max", {{"c", "2"}, {"eps", "1/2"}});
  const double head = std::ceil(b_bound(n, Rational(2)));
  const double scale = log2_sq(n) / to_double(eps);
  double fit_lo = 0, fit_hi = 0, worst = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    c.expect(r.ok(), "run feasible and clean");
    c.expect(r.opt_score <= 3 * r.alg_score, "OPT <= 3 ALG");
    worst = std::max(worst, r.opt_score / r.alg_score);
    const double k1 = (static_cast<double>(r.bits_read) - head) / scale;
    (i < reports.size() / 2 ? fit_lo : fit_hi) = std::max(i < reports.size() / 2 ? fit_lo : fit_hi, k1);
    c.expect(static_cast<double>(r.bits_read) <= head + kMaxAdviceK1 * scale,
             "bits within pinned budget");
  }
  c.expect(reports.size() == 200, "200 runs");
  c.expect(std::abs(fit_lo - fit_hi) <= 0.25 * std::max(fit_lo, fit_hi), "fitted K1 stable");
  c.detail << "max OPT/ALG=" << worst << " fitted K1=" << std::max(fit_lo, fit_hi)
           << " (seeds 1-100: " << fit_lo << ", 101-200: " << fit_hi << ")";
}

void weighted_min_desk(Check& c) {
  const int n = 16;
  const Rational eps(1);
  GeneratorSpec spec;
  spec.problem = Problem::kVertexCover;
  spec.n = n;
  spec.weight_decades = 2;
  const auto reports = run_all(seeded(spec, 200), "weighted-min",
                               {{"c", "2"}, {"eps", "1"}, {"wmin", "1"}, {"wmax", "100"}});
  const double head = std::ceil(b_bound(n, Rational(2)));
  const double shape = log2_sq(n) / to_double(eps) +
                       std::log2(2.0 + std::log2(100.0) / to_double(eps));
  double fit = 0, worst = 0;
  for (const auto& r : reports) {
    c.expect(r.ok(), "run feasible and clean");
    c.expect(r.alg_score <= 4 * r.opt_score, "ALG <= 4 OPT");
    worst = std::max(worst, r.alg_score / r.opt_score);
    fit = std::max(fit, (static_cast<double>(r.bits_read) - head) / shape);
    c.expect(static_cast<double>(r.bits_read) <= head + kMinAdviceK1 * shape,
             "bits within pinned budget");
  }
  c.expect(reports.size() == 200, "200 runs");
  c.detail << "max ALG/OPT=" << worst << " fitted K=" << fit;
}

void best_bucket_desk(Check& c) {
  const int n = 16;
  GeneratorSpec spec;
  spec.problem = Problem::kMatching;
  spec.n = n;
  spec.weight_decades = 8;
  const auto reports = run_all(seeded(spec, 100), "best-bucket", {{"base", "greedy"}});
  // ceil(log_1.5 256) = 14: 1.5^13 < 256 <= 1.5^14.
  c.expect(std::pow(1.5, 13) < 256 && std::pow(1.5, 14) >= 256, "bucket count arithmetic");
  const double bound = 2 * 1.5 * (14 + 1) / (1 - 1.0 / n);
  double k = 0, worst = 0;
  for (const auto& r : reports) {
    c.expect(r.ok(), "run feasible and clean");
    c.expect(r.ratio <= bound, "ratio within bound");
    worst = std::max(worst, r.ratio);
    k = std::max(k, static_cast<double>(r.bits_read) / std::log2(n));
  }
  c.expect(k <= kBestBucketK, "bits <= K log n");
  c.expect(reports.size() == 100, "100 runs");
  c.detail << "max ratio=" << worst << " bound=" << bound << " K=" << k;
}

void scheduling_desk(Check& c) {
  struct Case {
    const char* label;
    GeneratorKind kind;
    const char* algorithm;
    const char* objective;
    int n;
    double decades;
  };
  const Case cases[] = {
      {"unrelated lp-inf", GeneratorKind::kRandomUnrelated, "unrelated-min", "lp-inf", 12, 6},
      {"unrelated lp-2", GeneratorKind::kRandomUnrelated, "unrelated-min", "lp-2", 12, 6},
      {"related lp-2", GeneratorKind::kRandomRelated, "related-min", "lp-2", 12, 6},
      {"unrelated minload", GeneratorKind::kRandomUnrelated, "unrelated-max", "minload", 10, 5},
  };
  for (const auto& cs : cases) {
    GeneratorSpec spec;
    spec.kind = cs.kind;
    spec.n = cs.n;
    spec.m = 2;
    spec.weight_decades = cs.decades;
    const auto reports = run_all(seeded(spec, 100), cs.algorithm,
                                 {{"eps", "1"}, {"objective", cs.objective}});
    double worst = 0;
    std::int64_t slowest = 0;
    for (const auto& r : reports) {
      c.expect(r.ok(), std::string(cs.label) + " run clean");
      c.expect(r.ratio <= 2.0, std::string(cs.label) + " ratio <= 2");
      c.expect(r.runtime_ms < 5000, std::string(cs.label) + " per-run runtime");
      c.expect(std::stoi(r.params.at("sandwich_checks")) > 0 ||
                   std::stoi(r.params.at("important_jobs")) == 0,
               std::string(cs.label) + " sandwich checks ran");
      worst = std::max(worst, r.ratio);
      slowest = std::max(slowest, r.runtime_ms);
    }
    c.expect(reports.size() == 100, "100 runs");
    c.detail << cs.label << ":" << worst << "/" << slowest << "ms ";
  }
}

void reductions_exhaustive(Check& c) {
  const int n = 10;
  const Problem targets[] = {Problem::kVertexCover, Problem::kCycleFinding,
                             Problem::kDominatingSet, Problem::kSetCover};
  const auto family = cached_family(n, Rational(2), Direction::kMin);
  std::mutex mu;
  int passed = 0;
  parallel_for(1 << n, [&](int xm) {
    const BitString x = BitString::from_mask(n, static_cast<std::uint64_t>(xm));
    Instance src;
    src.problem = Problem::kMinAsg;
    for (int i = 0; i < n; ++i) src.requests.push_back({AsgBit{x[i]}, 1.0});
    for (Problem t : targets) {
      bool ok = false;
      std::string why;
      try {
        const auto red = reduce_asg(src, t);
        ok = red.transformed.size() == n;
        Outcome run{BitString::all_ones(n), false, INFINITY};
        bool target_feasible = check_feasible(red.transformed, BitString::all_ones(n));
        if (target_feasible) {
          const Outcome opt = brute_force_opt(red.transformed);
          AdviceTape tape;
          run = evaluate(red.transformed,
                         run_unweighted_aoc(red.transformed, *family, opt.output, tape).output);
        }
        ok = ok && target_feasible != red.degenerate;
        ok = ok && verify_reduction(src, run, red).passed;
      } catch (const std::exception& e) {
        why = e.what();
      }
      std::lock_guard lock(mu);
      c.expect(ok, std::string(to_string(t)) + " x=" + x.str() + " " + why);
      if (ok) ++passed;
    }
  });
  c.detail << passed << "/" << 4 * (1 << n) << " runs";
}

// Serves requests one by one and records outputs until the algorithm
// throws; prefix outputs stay available either way.
template <typename Seq, typename Alg>
std::vector<int> serve_prefix(const Seq& seq, Alg& algorithm, AdviceTape tape, bool* threw) {
  std::vector<int> out;
  *threw = false;
  try {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto view = std::span(seq.data(), i + 1);
      out.push_back(static_cast<int>(algorithm.next(view, tape)));
    }
  } catch (const std::exception&) {
    *threw = true;
  }
  return out;
}

void online_fuzz(Check& c) {
  const int trials = 10'000;
  const char* kinds[] = {"weighted-max", "weighted-min", "best-bucket", "unrelated-min", "related-min", "unrelated-max"};
  std::mutex mu;
  int divergences = 0;
  std::vector<int> per_kind(6, 0);
  parallel_for(trials, [&](int t) {
    const int kind = t % 6;
    std::mt19937_64 g(1000 + t);
    const int n = 4 + static_cast<int>(g() % 7);
    const int k = 1 + static_cast<int>(g() % (n - 1));
    bool diverged = false;
    try {
      if (kind <= 2) {
        GeneratorSpec spec;
        spec.problem = kind == 0 ? Problem::kIndependentSet
                       : kind == 1 ? Problem::kVertexCover
                                   : Problem::kMatching;
        spec.n = n;
        spec.weight_decades = kind == 1 ? 2 : 6;
        spec.seed = g();
        const Instance inst = generate_instance(spec);
        spec.seed = g();
        Instance other = generate_instance(spec);
        for (int i = 0; i < k; ++i) other.requests[i] = inst.requests[i];
        const AdviceScheme scheme =
            kind == 0 ? weighted_max_scheme(Rational(2), Rational(1, 2))
            : kind == 1 ? weighted_min_scheme(Rational(2), Rational(1))
                        : best_bucket_scheme(greedy_base(Problem::kMatching));
        AdviceTape tape;
        scheme.oracle(inst, brute_force_opt(inst).output, tape);
        auto a1 = scheme.make_algorithm();
        auto a2 = scheme.make_algorithm();
        bool t1 = false, t2 = false;
        const auto y1 = serve_prefix(inst.requests, *a1, tape, &t1);
        const auto y2 = serve_prefix(other.requests, *a2, tape, &t2);
        diverged = t1 || static_cast<int>(y2.size()) < k ||
                   !std::equal(y1.begin(), y1.begin() + k, y2.begin());
      } else {
        GeneratorSpec spec;
        spec.kind = kind == 4 ? GeneratorKind::kRandomRelated : GeneratorKind::kRandomUnrelated;
        spec.n = n;
        spec.m = 2;
        spec.weight_decades = 5;
        spec.seed = g();
        const GeneratedJobs a = generate_jobs(spec);
        spec.seed = g();
        GeneratedJobs b = generate_jobs(spec);
        if (kind == 4) {
          // Same machines, different later sizes.
          for (int i = 0; i < k; ++i) b.sizes[i] = a.sizes[i];
          b.jobs = related_jobs(b.sizes, a.speeds);
        } else {
          for (int i = 0; i < k; ++i) b.jobs[i] = a.jobs[i];
        }
        const Objective obj = kind == 5 ? Objective::min_load() : Objective::lp(2);
        const SchedulingScheme scheme =
            kind == 3   ? unrelated_min_scheme(obj, Rational(1, 2))
            : kind == 4 ? related_min_scheme(obj, Rational(1, 2), a.speeds)
                        : unrelated_max_scheme(obj, Rational(1, 2));
        AdviceTape tape;
        SchedulingAudit audit;
        scheme.oracle(a.jobs, brute_force_schedule(a.jobs, obj), tape, audit);
        auto a1 = scheme.make_algorithm();
        auto a2 = scheme.make_algorithm();
        bool t1 = false, t2 = false;
        const auto y1 = serve_prefix(a.jobs, *a1, tape, &t1);
        const auto y2 = serve_prefix(b.jobs, *a2, tape, &t2);
        diverged = t1 || static_cast<int>(y2.size()) < k ||
                   !std::equal(y1.begin(), y1.begin() + k, y2.begin());
      }
    } catch (const std::exception&) {
      diverged = true;
    }
    std::lock_guard lock(mu);
    ++per_kind[kind];
    if (diverged) {
      ++divergences;
      c.expect(false, std::string(kinds[kind]) + " trial " + std::to_string(t));
    }
  });
  c.expect(divergences == 0, "no divergences");
  c.detail << trials << " trials, " << divergences << " divergences";
}

void prefix_family(Check& c) {
  const double f = 10;
  const Problem problems[] = {Problem::kIndependentSet, Problem::kClique, Problem::kMatching,
                              Problem::kDisjointPath};
  int witnesses = 0;
  for (Problem p : problems) {
    for (int n = 1; n <= 8; ++n) {
      const auto fam = geometric_family(p, n, f);
      double power = 1;
      for (int i = 1; i <= n; ++i) {
        power *= f;
        c.expect(brute_force_opt(fam[i - 1]).score == power,
                 std::string(to_string(p)) + " OPT = f^i");
      }
      if (n < 2) continue;
      const int b = geometric_family_budget(n);
      c.expect(b == static_cast<int>(std::floor(std::log2(n))) - 1, "budget");
      for (const AdviceScheme& scheme :
           {greedy_base(p).scheme, covering_scheme(Rational(2), Direction::kMax)}) {
        const auto w = geometric_family_verify(p, n, f, scheme, b);
        c.expect(w.shorter < w.longer, "two prefixes share a class");
        c.expect(w.infeasible || w.unbounded || w.log2_ratio >= std::log2(f) * (1 - 1e-12),
                 std::string(to_string(p)) + " log-ratio >= log2 f, n=" + std::to_string(n) +
                     " " + scheme.name);
        ++witnesses;
      }
    }
  }
  c.detail << witnesses << " witnesses";
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion(1, "star adversary expectations", 10, star_expectations_exact);
  criterion(2, "string guessing verifier", 60, string_guessing_lower_bound);
  criterion(3, "exponent separation, n <= 12", 0, observation_one);
  criterion(4, "covering strictness", 120, covering_strictness);
  criterion(5, "weighted max, IS n=18", 300, weighted_max_desk);
  criterion(6, "weighted min, VC n=16", 300, weighted_min_desk);
  criterion(7, "best bucket, matching n=16", 120, best_bucket_desk);
  criterion(8, "scheduling vs brute force", 0, scheduling_desk);
  criterion(9, "reductions exhaustive n=10", 180, reductions_exhaustive);
  criterion(10, "online-constraint fuzz", 0, online_fuzz);
  criterion(11, "geometric prefix family", 0, prefix_family);
  std::printf("%s: %d of 11 criteria failed, %.1fs total\n", failures ? "FAIL" : "PASS",
              failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
