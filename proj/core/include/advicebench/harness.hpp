#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "advicebench/aoc_problems.hpp"
#include "advicebench/errors.hpp"
#include "advicebench/rational.hpp"
#include "advicebench/report.hpp"
#include "advicebench/scheduling.hpp"

namespace advicebench {

enum class GeneratorKind {
  kRandomGraph,      // G(n, p) for vertex problems, random edges/subpaths/sets
  kClique,
  kStar,
  kPath,
  kRandomUnrelated,  // scheduling: loads log-uniform over weight_decades
  kRandomRelated,    // scheduling: sizes over weight_decades, speeds in [1, 10)
  kAsgRandom,        // minasg with Bernoulli(p) hidden bits
  kStringGuessing,   // exponent-weighted minasg adversary on a random x
  kPrefixFamily,     // longest prefix of the geometric family, weights f^i
  kStarAdversary,    // random-length star drawn from the k = 2c - 1 law
};

std::string_view to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view text);
bool is_scheduling(GeneratorKind kind);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kRandomGraph;
  Problem problem = Problem::kIndependentSet;
  int n = 8;
  int m = 2;
  std::uint64_t seed = 1;
  double p = 0.5;
  // 0 leaves every weight at 1; otherwise 10^(U * decades).
  double weight_decades = 0.0;
  double f = 10.0;    // prefix family base
  Rational c{2};      // star adversary
};

Instance generate_instance(const GeneratorSpec& spec);

struct GeneratedJobs {
  std::vector<Job> jobs;
  std::vector<double> sizes;   // related only
  std::vector<double> speeds;  // related only
};
GeneratedJobs generate_jobs(const GeneratorSpec& spec);

using Params = std::map<std::string, std::string>;

// Algorithm tags:
//   covering        covering family advice (c), scored unweighted
//   weighted-max    sparsified Max AOC (c, eps)
//   weighted-min    sparsified Min AOC (c, eps; weight range from the spec
//                   unless wmin/wmax are given)
//   best-bucket     best-bucket wrapper (base = greedy | covering, c)
//   accept-last     star strategy that takes the final edge
//   accept-jth      star strategy that takes edge j
//   unrelated-min, related-min, unrelated-max
//                   scheduling (eps, objective = lp-inf | lp-<p> | minload)
// Incompatible pairs raise ContractError; oversized instances ResourceError.
RunReport run_experiment(const GeneratorSpec& spec, std::string_view algorithm,
                         const Params& params);

Objective parse_objective(std::string_view text);

struct BatchRow {
  int runs = 0;
  double max_ratio = 0.0;
  std::size_t max_bits = 0;
  double advice_bound = 0.0;
  double ratio_bound = 0.0;
  int violations = 0;
};

struct BatchSummary {
  double max_ratio = 0.0;
  std::size_t max_bits = 0;
  std::map<int, BatchRow> per_n;
  std::vector<RunReport> reports;  // in trial order
};

// Raised when a run of an upper-bound algorithm is infeasible.
class BatchAborted : public Error {
 public:
  BatchAborted(const std::string& what, std::uint64_t seed)
      : Error(what), seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// Worker count: ADVICEBENCH_WORKERS if set, else the hardware concurrency.
int worker_count();

// Runs `trials` seeds per spec; trial t of a spec uses
// trial_seed(spec.seed, t). Reports are also handed to `sink` (serialized
// through one lock) as they complete.
BatchSummary batch(const std::vector<GeneratorSpec>& specs,
                   std::string_view algorithm, const Params& params,
                   int trials,
                   const std::function<void(const RunReport&)>& sink = {});

std::string summary_csv(const BatchSummary& summary);

}  // namespace advicebench
