// advicebench: run advice algorithms, generate instances, check lower bounds.
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "advicebench/adversaries.hpp"
#include "advicebench/covering.hpp"
#include "advicebench/harness.hpp"
#include "advicebench/json_io.hpp"
#include "advicebench/weighted_core.hpp"

namespace ab = advicebench;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ab::ContractError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ab::ContractError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct RunOptions {
  std::string problem = "independent_set";
  std::string algo = "covering";
  std::string kind;
  int n = 8;
  int m = 2;
  std::string c = "2";
  std::string eps;
  std::uint64_t seed = 1;
  double p = 0.5;
  double decades = 0;
  double f = 10;
  int trials = 1;
  std::string objective;
  std::string base;
  int j = 1;
  std::string instance;
  std::string out;
  std::string csv;
  bool timing = false;
};

bool scheduling_algo(const std::string& a) {
  return a == "unrelated-min" || a == "related-min" || a == "unrelated-max";
}

ab::Params params_of(const RunOptions& o) {
  ab::Params p{{"c", o.c}};
  if (!o.eps.empty()) p["eps"] = o.eps;
  if (!o.objective.empty()) p["objective"] = o.objective;
  if (!o.base.empty()) p["base"] = o.base;
  if (o.algo == "accept-jth") p["j"] = std::to_string(o.j);
  return p;
}

ab::GeneratorSpec spec_of(const RunOptions& o) {
  ab::GeneratorSpec s;
  s.problem = ab::parse_problem(o.problem);
  if (!o.kind.empty()) {
    s.kind = ab::parse_generator_kind(o.kind);
  } else if (scheduling_algo(o.algo)) {
    s.kind = o.algo == "related-min" ? ab::GeneratorKind::kRandomRelated
                                     : ab::GeneratorKind::kRandomUnrelated;
  } else if (s.problem == ab::Problem::kMinAsg) {
    s.kind = ab::GeneratorKind::kAsgRandom;
  }
  s.n = o.n;
  s.m = o.m;
  s.seed = o.seed;
  s.p = o.p;
  s.weight_decades = o.decades;
  s.f = o.f;
  s.c = ab::parse_rational(o.c);
  return s;
}

// A single run on an instance file.
ab::RunReport run_file(const RunOptions& o) {
  const std::string text = read_file(o.instance);
  const ab::Params params = params_of(o);
  const ab::Rational eps = ab::parse_rational(o.eps.empty() ? "1/2" : o.eps);
  const ab::Rational c = ab::parse_rational(o.c);
  ab::AdviceTape tape;
  if (scheduling_algo(o.algo)) {
    const auto s = ab::scheduling_from_json(text);
    const ab::Rational e = ab::parse_rational(o.eps.empty() ? "1" : o.eps);
    if (o.algo == "unrelated-min") return ab::unrelated_min_run(s.jobs, s.objective, e, tape);
    if (o.algo == "unrelated-max") return ab::unrelated_max_run(s.jobs, s.objective, e, tape);
    if (!s.speeds) throw ab::ContractError("related-min needs speeds");
    return ab::related_min_run(s.sizes, *s.speeds, s.objective, e, tape);
  }
  const ab::Instance inst = ab::instance_from_json(text);
  if (o.algo == "covering") {
    return ab::covering_run(inst, c, tape);
  }
  if (o.algo == "weighted-max") return ab::weighted_max_run(inst, c, eps, tape);
  if (o.algo == "weighted-min") {
    const auto w = inst.weights();
    return ab::weighted_min_run(inst, c, eps, *std::min_element(w.begin(), w.end()),
                                *std::max_element(w.begin(), w.end()), tape);
  }
  if (o.algo == "best-bucket") {
    const auto base = o.base == "covering" ? ab::covering_base(c)
                                           : ab::greedy_base(inst.problem);
    return ab::best_bucket_run(inst, base, tape);
  }
  if (o.algo == "accept-last") return ab::run_scheme(inst, ab::accept_last_scheme(), tape);
  if (o.algo == "accept-jth") return ab::run_scheme(inst, ab::accept_jth_scheme(o.j), tape);
  throw ab::ContractError("unknown algorithm " + o.algo);
}

int cmd_run(const RunOptions& o) {
  Output out(o.out);
  if (!o.instance.empty()) {
    const auto r = run_file(o);
    out.stream() << ab::report_to_json(r, o.timing) << '\n';
    return r.ok() ? 0 : kExitViolation;
  }
  const auto summary = ab::batch({spec_of(o)}, o.algo, params_of(o), o.trials,
                                 [&](const ab::RunReport& r) {
                                   out.stream() << ab::report_to_json(r, o.timing) << '\n';
                                 });
  if (!o.csv.empty()) {
    std::ofstream csv(o.csv);
    csv << ab::summary_csv(summary);
  }
  for (const auto& r : summary.reports) {
    if (!r.ok()) return kExitViolation;
  }
  return 0;
}

int cmd_gen(const RunOptions& o) {
  Output out(o.out);
  ab::GeneratorSpec spec = spec_of(o);
  if (o.kind.empty()) throw ab::ContractError("--kind is required");
  if (ab::is_scheduling(spec.kind)) {
    const auto g = ab::generate_jobs(spec);
    ab::SchedulingInstance s;
    s.machines = spec.m;
    s.jobs = g.jobs;
    if (spec.kind == ab::GeneratorKind::kRandomRelated) {
      s.speeds = g.speeds;
      s.sizes = g.sizes;
    }
    s.objective = ab::parse_objective(o.objective.empty() ? "lp-inf" : o.objective);
    out.stream() << ab::scheduling_to_json(s) << '\n';
  } else {
    out.stream() << ab::instance_to_json(ab::generate_instance(spec)) << '\n';
  }
  return 0;
}

struct LbOptions {
  std::string adversary;
  int theorem = 0;
  std::string problem = "independent_set";
  std::string algo = "guess-zero";
  int n = 8;
  int bits = -1;
  double log2a = 2048;
  double f = 10;
};

int cmd_verify_lb(LbOptions o) {
  if (o.theorem == 1) o.adversary = "string-guessing";
  if (o.theorem == 7) o.adversary = "prefix";
  if (o.adversary == "string-guessing") {
    ab::AdviceScheme scheme;
    if (o.algo == "guess-zero") {
      scheme = ab::guess_zero_scheme();
    } else if (o.algo == "verbatim") {
      scheme = ab::verbatim_guess_scheme();
    } else if (o.algo == "covering") {
      scheme = ab::covering_scheme(ab::Rational(2), ab::Direction::kMin, o.n);
    } else {
      throw ab::ContractError("--algo must be guess-zero, verbatim or covering");
    }
    const int bits = o.bits < 0 ? o.n - 1 : o.bits;
    try {
      const auto w = ab::string_guessing_verify(scheme, o.n, bits, o.log2a);
      std::cout << ab::witness_to_json(w) << '\n';
      const double target = o.log2a * std::ldexp(1.0, -o.n) - std::log2(o.n);
      return w.infeasible || w.log2_ratio >= target ? 0 : kExitViolation;
    } catch (const ab::InapplicableError& e) {
      std::cout << R"({"inapplicable": ")" << e.what() << "\"}\n";
      return 0;
    }
  }
  if (o.adversary == "prefix") {
    const ab::Problem problem = ab::parse_problem(o.problem);
    const int bits = o.bits < 0 ? ab::geometric_family_budget(o.n) : o.bits;
    ab::AdviceScheme scheme;
    if (o.algo == "greedy" || o.algo == "guess-zero") {
      scheme = ab::greedy_base(problem).scheme;
    } else if (o.algo == "covering") {
      scheme = ab::covering_scheme(ab::Rational(2), ab::Direction::kMax);
    } else {
      throw ab::ContractError("--algo must be greedy or covering");
    }
    try {
      const auto w = ab::geometric_family_verify(problem, o.n, o.f, scheme, bits);
      std::cout << ab::witness_to_json(w) << '\n';
      return w.infeasible || w.unbounded || w.log2_ratio >= std::log2(o.f) - 1e-9
                 ? 0
                 : kExitViolation;
    } catch (const ab::InapplicableError& e) {
      std::cout << R"({"inapplicable": ")" << e.what() << "\"}\n";
      return 0;
    }
  }
  throw ab::ContractError("--adversary must be string-guessing or prefix");
}

int cmd_expectations(const std::string& c_text, std::int64_t samples,
                     std::uint64_t seed) {
  const ab::Rational c = ab::parse_rational(c_text);
  const auto e = ab::star_expectations(c);
  std::optional<ab::StarMonteCarlo> mc;
  bool ok = e.identities_hold();
  if (samples > 0) {
    mc = ab::star_monte_carlo(c, samples, seed);
    ok = ok && std::abs(mc->mean_opt - ab::to_double(e.e_opt)) <= 3 * mc->se_opt;
    for (std::size_t j = 0; j < mc->mean_det.size(); ++j) {
      ok = ok && std::abs(mc->mean_det[j] - 2.0) <= 3 * mc->se_det[j];
    }
  }
  std::cout << ab::expectations_to_json(e, mc) << '\n';
  return ok ? 0 : kExitViolation;
}

int cmd_family(int n, const std::string& c_text, const std::string& direction,
               const std::string& out_path) {
  Output out(out_path);
  const auto family = ab::build_family_greedy(n, ab::parse_rational(c_text),
                                              ab::parse_direction(direction));
  out.stream() << ab::family_to_json(family) << '\n';
  std::cerr << "members " << family.members.size() << ", log2|F| "
            << std::log2(static_cast<double>(family.members.size()))
            << ", b_bound " << ab::b_bound(n, family.c) << '\n';
  return ab::verify_family(family) ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Advice-complexity simulator for online covering and scheduling"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an algorithm on generated or stored instances");
  run_cmd->add_option("--problem", run.problem, "Problem tag");
  run_cmd->add_option("--algo", run.algo, "Algorithm tag")->required();
  run_cmd->add_option("--kind", run.kind, "Generator kind");
  run_cmd->add_option("--n", run.n, "Requests or jobs");
  run_cmd->add_option("--m", run.m, "Machines");
  run_cmd->add_option("--c", run.c, "Competitive target c");
  run_cmd->add_option("--eps", run.eps, "Epsilon");
  run_cmd->add_option("--seed", run.seed, "Base seed");
  run_cmd->add_option("--p", run.p, "Edge or bit probability");
  run_cmd->add_option("--decades", run.decades, "Weight decades (log-uniform)");
  run_cmd->add_option("--f", run.f, "Prefix family base");
  run_cmd->add_option("--trials", run.trials, "Seeds per run")->check(CLI::PositiveNumber);
  run_cmd->add_option("--objective", run.objective, "lp-inf, lp-<p> or minload");
  run_cmd->add_option("--base", run.base, "best-bucket base: greedy or covering");
  run_cmd->add_option("--j", run.j, "Edge taken by accept-jth");
  run_cmd->add_option("--instance", run.instance, "Instance JSON file");
  run_cmd->add_option("--out", run.out, "JSON-lines output file");
  run_cmd->add_option("--csv", run.csv, "Per-n summary CSV");
  run_cmd->add_flag("--timing", run.timing, "Include runtime_ms in reports");

  RunOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance as JSON");
  gen_cmd->add_option("--kind", gen.kind, "Generator kind")->required();
  gen_cmd->add_option("--problem", gen.problem, "Problem tag");
  gen_cmd->add_option("--n", gen.n, "Requests or jobs");
  gen_cmd->add_option("--m", gen.m, "Machines");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--p", gen.p, "Edge or bit probability");
  gen_cmd->add_option("--decades", gen.decades, "Weight decades");
  gen_cmd->add_option("--f", gen.f, "Prefix family base");
  gen_cmd->add_option("--c", gen.c, "Star adversary c");
  gen_cmd->add_option("--objective", gen.objective, "Scheduling objective");
  gen_cmd->add_option("--out", gen.out, "Output file");

  LbOptions lb;
  auto* lb_cmd = app.add_subcommand("verify-lb", "Search for a lower-bound witness");
  auto* adv = lb_cmd->add_option("--adversary", lb.adversary, "string-guessing or prefix");
  auto* thm = lb_cmd->add_option("--theorem", lb.theorem, "Alias: 1 = string-guessing, 7 = prefix")
                  ->check(CLI::IsMember({1, 7}));
  adv->excludes(thm);
  lb_cmd->add_option("--problem", lb.problem, "Problem for the prefix family");
  lb_cmd->add_option("--algo", lb.algo, "Algorithm under test");
  lb_cmd->add_option("--n", lb.n, "Length");
  lb_cmd->add_option("--bits", lb.bits, "Advice budget");
  lb_cmd->add_option("--log2a", lb.log2a, "log2 of the weight base");
  lb_cmd->add_option("--f", lb.f, "Prefix family base");

  std::string exp_c = "2";
  std::int64_t exp_samples = 0;
  std::uint64_t exp_seed = 1;
  auto* exp_cmd = app.add_subcommand("expectations", "Exact star-adversary expectations");
  exp_cmd->add_option("--c", exp_c, "Competitive target c")->required();
  exp_cmd->add_option("--samples", exp_samples, "Monte-Carlo samples");
  exp_cmd->add_option("--seed", exp_seed, "Monte-Carlo seed");

  int fam_n = 8;
  std::string fam_c = "2";
  std::string fam_dir = "min";
  std::string fam_out;
  auto* fam_cmd = app.add_subcommand("family", "Build a greedy covering family");
  fam_cmd->add_option("--n", fam_n, "String length")->required();
  fam_cmd->add_option("--c", fam_c, "Competitive target c")->required();
  fam_cmd->add_option("--direction", fam_dir, "min or max")->required();
  fam_cmd->add_option("--out", fam_out, "Output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*gen_cmd) return cmd_gen(gen);
    if (*lb_cmd) return cmd_verify_lb(lb);
    if (*exp_cmd) return cmd_expectations(exp_c, exp_samples, exp_seed);
    if (*fam_cmd) return cmd_family(fam_n, fam_c, fam_dir, fam_out);
  } catch (const ab::BatchAborted& e) {
    std::cerr << "batch aborted: " << e.what() << '\n';
    return kExitViolation;
  } catch (const ab::Error& e) {
    std::cout << R"({"error": ")" << e.what() << "\"}\n";
    return kExitError;
  }
  return 0;
}
