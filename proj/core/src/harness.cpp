#include "advicebench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "advicebench/adversaries.hpp"
#include "advicebench/covering.hpp"
#include "advicebench/rng.hpp"
#include "advicebench/sparsify.hpp"
#include "advicebench/weighted_core.hpp"

namespace advicebench {

namespace {

struct KindName {
  GeneratorKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {GeneratorKind::kRandomGraph, "random_graph"},
    {GeneratorKind::kClique, "clique"},
    {GeneratorKind::kStar, "star"},
    {GeneratorKind::kPath, "path"},
    {GeneratorKind::kRandomUnrelated, "random_unrelated"},
    {GeneratorKind::kRandomRelated, "random_related"},
    {GeneratorKind::kAsgRandom, "asg_random"},
    {GeneratorKind::kStringGuessing, "string_guessing"},
    {GeneratorKind::kPrefixFamily, "prefix_family"},
    {GeneratorKind::kStarAdversary, "star_adversary"},
};

bool vertex_arrival(Problem p) {
  switch (p) {
    case Problem::kVertexCover:
    case Problem::kDominatingSet:
    case Problem::kCycleFinding:
    case Problem::kIndependentSet:
    case Problem::kClique:
      return true;
    default:
      return false;
  }
}

[[noreturn]] void unsupported(const GeneratorSpec& spec) {
  throw ContractError("generator " + std::string(to_string(spec.kind)) +
                      " does not produce " + std::string(to_string(spec.problem)));
}

Instance structured(const GeneratorSpec& spec, SplitMix64& rng) {
  const int n = spec.n;
  Instance inst;
  inst.problem = spec.problem;
  for (int i = 0; i < n; ++i) {
    Request r;
    if (spec.problem == Problem::kMinAsg) {
      if (spec.kind != GeneratorKind::kRandomGraph) unsupported(spec);
      r.payload = AsgBit{rng.bernoulli(spec.p)};
    } else if (vertex_arrival(spec.problem)) {
      VertexArrival a;
      for (int j = 0; j < i; ++j) {
        bool edge = false;
        switch (spec.kind) {
          case GeneratorKind::kRandomGraph: edge = rng.bernoulli(spec.p); break;
          case GeneratorKind::kClique: edge = true; break;
          case GeneratorKind::kStar: edge = j == 0; break;
          case GeneratorKind::kPath: edge = j == i - 1; break;
          default: unsupported(spec);
        }
        if (edge) a.earlier_neighbors.push_back(j);
      }
      r.payload = a;
    } else if (spec.problem == Problem::kMatching) {
      switch (spec.kind) {
        case GeneratorKind::kRandomGraph: {
          const auto v = static_cast<std::uint64_t>(std::max(2, n));
          const auto a = static_cast<int>(rng.below(v));
          auto b = static_cast<int>(rng.below(v - 1));
          if (b >= a) ++b;
          r.payload = Edge{std::min(a, b), std::max(a, b)};
          break;
        }
        case GeneratorKind::kStar: r.payload = Edge{0, i + 1}; break;
        case GeneratorKind::kPath: r.payload = Edge{i, i + 1}; break;
        default: unsupported(spec);
      }
    } else if (spec.problem == Problem::kDisjointPath) {
      inst.path_length = n + 1;
      switch (spec.kind) {
        case GeneratorKind::kRandomGraph: {
          const auto len = static_cast<std::uint64_t>(inst.path_length);
          const auto a = static_cast<int>(rng.below(len)) + 1;
          auto b = static_cast<int>(rng.below(len - 1)) + 1;
          if (b >= a) ++b;
          r.payload = Subpath{std::min(a, b), std::max(a, b)};
          break;
        }
        case GeneratorKind::kPath: r.payload = Subpath{i + 1, i + 2}; break;
        default: unsupported(spec);
      }
    } else if (spec.problem == Problem::kSetCover) {
      if (spec.kind != GeneratorKind::kRandomGraph) unsupported(spec);
      inst.universe_size = std::clamp(n, 1, 64);
      Subset s;
      for (int e = 1; e <= inst.universe_size; ++e) {
        if (rng.bernoulli(spec.p)) s.elements.push_back(e);
      }
      if (s.elements.empty()) {
        s.elements.push_back(static_cast<int>(rng.below(inst.universe_size)) + 1);
      }
      r.payload = s;
    } else {
      unsupported(spec);
    }
    r.weight = spec.weight_decades > 0 ? rng.log_uniform(spec.weight_decades) : 1.0;
    inst.requests.push_back(std::move(r));
  }
  if (spec.problem == Problem::kSetCover) {
    // Every element must be coverable; put stragglers in some subset.
    std::vector<char> seen(inst.universe_size + 1, 0);
    for (const auto& r : inst.requests) {
      for (int e : std::get<Subset>(r.payload).elements) seen[e] = 1;
    }
    for (int e = 1; e <= inst.universe_size; ++e) {
      if (seen[e]) continue;
      auto& s = std::get<Subset>(inst.requests[rng.below(n)].payload).elements;
      s.insert(std::lower_bound(s.begin(), s.end(), e), e);
    }
  }
  return inst;
}

Rational param_rational(const Params& params, const char* key,
                        std::string_view fallback) {
  const auto it = params.find(key);
  return parse_rational(it == params.end() ? fallback : std::string_view(it->second));
}

std::string param_string(const Params& params, const char* key,
                         std::string fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void require_problem(const Instance& inst, bool ok, std::string_view algorithm) {
  if (!ok) {
    throw ContractError(std::string(algorithm) + " does not apply to " +
                        std::string(to_string(inst.problem)));
  }
}

void require_scheduling(const GeneratorSpec& spec, std::string_view algorithm) {
  if (!is_scheduling(spec.kind)) {
    throw ContractError(std::string(algorithm) + " needs a scheduling generator");
  }
}

void note_ratio_bound(RunReport& r, double bound) {
  std::ostringstream os;
  os.precision(17);
  os << bound;
  r.params["ratio_bound"] = os.str();
}

RunReport run_aoc(const GeneratorSpec& spec, std::string_view algorithm,
                  const Params& params) {
  const Instance inst = generate_instance(spec);
  AdviceTape tape;
  const Rational c = param_rational(params, "c", "2");
  const Rational eps = param_rational(params, "eps", "1/2");

  if (algorithm == "covering") {
    RunReport r = covering_run(inst, c, tape);
    note_ratio_bound(r, to_double(c));
    return r;
  }
  if (algorithm == "weighted-max") {
    require_problem(inst, !is_minimization(inst.problem), algorithm);
    RunReport r = weighted_max_run(inst, c, eps, tape);
    note_ratio_bound(r, to_double((1 + eps) * c));
    return r;
  }
  if (algorithm == "weighted-min") {
    require_problem(inst, is_minimization(inst.problem), algorithm);
    const auto weights = inst.weights();
    const double lo = std::stod(param_string(params, "wmin", "1"));
    const double hi = params.contains("wmax")
                          ? std::stod(params.at("wmax"))
                          : std::max(std::pow(10.0, spec.weight_decades),
                                     *std::max_element(weights.begin(), weights.end()));
    RunReport r = weighted_min_run(inst, c, eps, lo, hi, tape);
    note_ratio_bound(r, to_double((1 + eps) * c));
    return r;
  }
  if (algorithm == "best-bucket") {
    require_problem(inst, !is_minimization(inst.problem), algorithm);
    const std::string base = param_string(params, "base", "greedy");
    BaseAlgorithm b;
    if (base == "greedy") {
      b = greedy_base(inst.problem);
    } else if (base == "covering") {
      b = covering_base(c);
    } else {
      throw ContractError("base must be greedy or covering");
    }
    RunReport r = best_bucket_run(inst, b, tape);
    r.params["base"] = base;
    note_ratio_bound(r, best_bucket_ratio_bound(r.n, b.c));
    return r;
  }
  if (algorithm == "accept-last" || algorithm == "accept-jth") {
    require_problem(inst, inst.problem == Problem::kMatching, algorithm);
    const AdviceScheme scheme =
        algorithm == "accept-last"
            ? accept_last_scheme()
            : accept_jth_scheme(std::stoi(param_string(params, "j", "1")));
    RunReport r = run_scheme(inst, scheme, tape);
    if (algorithm == "accept-jth") r.params["j"] = param_string(params, "j", "1");
    return r;
  }
  throw ContractError("unknown algorithm " + std::string(algorithm));
}

RunReport run_jobs(const GeneratorSpec& spec, std::string_view algorithm,
                   const Params& params) {
  require_scheduling(spec, algorithm);
  const GeneratedJobs g = generate_jobs(spec);
  const Rational eps = param_rational(params, "eps", "1");
  AdviceTape tape;
  if (algorithm == "unrelated-min") {
    const Objective obj = parse_objective(param_string(params, "objective", "lp-inf"));
    RunReport r = unrelated_min_run(g.jobs, obj, eps, tape);
    note_ratio_bound(r, to_double(half_step_base(eps)) + 1.0 / r.n);
    return r;
  }
  if (algorithm == "related-min") {
    if (spec.kind != GeneratorKind::kRandomRelated) {
      throw ContractError("related-min needs the random_related generator");
    }
    const Objective obj = parse_objective(param_string(params, "objective", "lp-2"));
    RunReport r = related_min_run(g.sizes, g.speeds, obj, eps, tape);
    note_ratio_bound(r, to_double(half_step_base(eps)) + 1.0 / r.n);
    return r;
  }
  if (algorithm == "unrelated-max") {
    const Objective obj = parse_objective(param_string(params, "objective", "minload"));
    RunReport r = unrelated_max_run(g.jobs, obj, eps, tape);
    note_ratio_bound(r, to_double(1 + eps));
    return r;
  }
  throw ContractError("unknown algorithm " + std::string(algorithm));
}

bool is_scheduling_algorithm(std::string_view algorithm) {
  return algorithm == "unrelated-min" || algorithm == "related-min" ||
         algorithm == "unrelated-max";
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '-', '_');
  for (const auto& k : kKindNames) {
    if (k.name == s) return k.kind;
  }
  throw ContractError("unknown generator kind " + std::string(text));
}

bool is_scheduling(GeneratorKind kind) {
  return kind == GeneratorKind::kRandomUnrelated ||
         kind == GeneratorKind::kRandomRelated;
}

Instance generate_instance(const GeneratorSpec& spec) {
  if (spec.n < 1) throw ContractError("n must be positive");
  SplitMix64 rng(spec.seed);
  switch (spec.kind) {
    case GeneratorKind::kRandomGraph:
    case GeneratorKind::kClique:
    case GeneratorKind::kStar:
    case GeneratorKind::kPath:
      return structured(spec, rng);
    case GeneratorKind::kAsgRandom: {
      GeneratorSpec s = spec;
      s.problem = Problem::kMinAsg;
      s.kind = GeneratorKind::kRandomGraph;
      return structured(s, rng);
    }
    case GeneratorKind::kStringGuessing: {
      BitString x(spec.n);
      for (int i = 0; i < spec.n; ++i) x.set(i, rng.bernoulli(spec.p));
      return string_guessing_instance(x);
    }
    case GeneratorKind::kPrefixFamily:
      return geometric_family(spec.problem, spec.n, spec.f).back();
    case GeneratorKind::kStarAdversary: {
      const int k = star_expectations(spec.c).k;
      return star_instance(sample_star_length(k, rng));
    }
    case GeneratorKind::kRandomUnrelated:
    case GeneratorKind::kRandomRelated:
      break;
  }
  throw ContractError("scheduling generators produce jobs, not AOC instances");
}

GeneratedJobs generate_jobs(const GeneratorSpec& spec) {
  if (!is_scheduling(spec.kind)) {
    throw ContractError("generator does not produce scheduling jobs");
  }
  if (spec.n < 1 || spec.m < 1) throw ContractError("n and m must be positive");
  SplitMix64 rng(spec.seed);
  const auto draw = [&] {
    return spec.weight_decades > 0 ? rng.log_uniform(spec.weight_decades) : 1.0;
  };
  GeneratedJobs g;
  if (spec.kind == GeneratorKind::kRandomRelated) {
    for (int j = 0; j < spec.m; ++j) g.speeds.push_back(rng.log_uniform(1.0));
    for (int i = 0; i < spec.n; ++i) g.sizes.push_back(draw());
    g.jobs = related_jobs(g.sizes, g.speeds);
    return g;
  }
  for (int i = 0; i < spec.n; ++i) {
    Job job;
    for (int j = 0; j < spec.m; ++j) job.loads.push_back(draw());
    g.jobs.push_back(std::move(job));
  }
  return g;
}

Objective parse_objective(std::string_view text) {
  if (text == "minload") return Objective::min_load();
  if (text == "makespan" || text == "lp-inf") return Objective::makespan();
  if (text.starts_with("lp-")) {
    const std::string p(text.substr(3));
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == p.size() && value >= 1) return Objective::lp(value);
  }
  throw ContractError("objective must be lp-inf, lp-<p> with p >= 1, or minload");
}

RunReport run_experiment(const GeneratorSpec& spec, std::string_view algorithm,
                         const Params& params) {
  RunReport r = is_scheduling_algorithm(algorithm)
                    ? run_jobs(spec, algorithm, params)
                    : run_aoc(spec, algorithm, params);
  r.params["seed"] = std::to_string(spec.seed);
  r.params["generator"] = std::string(to_string(spec.kind));
  if (spec.weight_decades > 0) {
    std::ostringstream os;
    os << spec.weight_decades;
    r.params["decades"] = os.str();
  }
  return r;
}

int worker_count() {
  if (const char* env = std::getenv("ADVICEBENCH_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BatchSummary batch(const std::vector<GeneratorSpec>& specs,
                   std::string_view algorithm, const Params& params,
                   int trials,
                   const std::function<void(const RunReport&)>& sink) {
  if (trials < 1) throw ContractError("trials must be >= 1");
  BatchSummary summary;
  const std::size_t total = specs.size() * static_cast<std::size_t>(trials);
  if (total == 0) return summary;

  std::vector<RunReport> reports(total);
  std::vector<std::string> errors(total);
  std::vector<std::uint64_t> seeds(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex sink_mutex;
  const bool upper_bound = algorithm != "accept-jth";

  auto work = [&] {
    for (std::size_t idx; !stop && (idx = next.fetch_add(1)) < total;) {
      GeneratorSpec spec = specs[idx / trials];
      spec.seed = trial_seed(spec.seed, idx % trials);
      seeds[idx] = spec.seed;
      try {
        RunReport r = run_experiment(spec, algorithm, params);
        r.run_id = idx;
        if (upper_bound && !r.alg_feasible) stop = true;
        if (sink) {
          std::lock_guard lock(sink_mutex);
          sink(r);
        }
        reports[idx] = std::move(r);
      } catch (const Error& e) {
        errors[idx] = e.what();
        stop = true;
      }
    }
  };
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(worker_count()), total));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  // Report the lowest failing trial so the outcome does not depend on timing.
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!errors[idx].empty()) {
      throw BatchAborted(errors[idx] + " (seed " + std::to_string(seeds[idx]) + ")",
                         seeds[idx]);
    }
    if (upper_bound && !reports[idx].alg_feasible) {
      throw BatchAborted("infeasible run (seed " + std::to_string(seeds[idx]) + ")",
                         seeds[idx]);
    }
  }
  for (auto& r : reports) {
    BatchRow& row = summary.per_n[r.n];
    ++row.runs;
    row.max_ratio = std::max(row.max_ratio, r.ratio);
    row.max_bits = std::max(row.max_bits, r.bits_read);
    row.advice_bound = std::max(row.advice_bound, r.advice_bound);
    if (r.params.contains("ratio_bound")) {
      row.ratio_bound = std::max(row.ratio_bound, std::stod(r.params.at("ratio_bound")));
    }
    row.violations += static_cast<int>(r.violations.size());
    summary.max_ratio = std::max(summary.max_ratio, r.ratio);
    summary.max_bits = std::max(summary.max_bits, r.bits_read);
  }
  summary.reports = std::move(reports);
  return summary;
}

std::string summary_csv(const BatchSummary& summary) {
  std::ostringstream os;
  os.precision(10);
  os << "n,runs,max_ratio,ratio_bound,max_bits,advice_bound,violations\n";
  for (const auto& [n, row] : summary.per_n) {
    os << n << ',' << row.runs << ',' << row.max_ratio << ',' << row.ratio_bound
       << ',' << row.max_bits << ',' << row.advice_bound << ',' << row.violations
       << '\n';
  }
  return os.str();
}

}  // namespace advicebench
