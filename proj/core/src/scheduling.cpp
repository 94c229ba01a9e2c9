#include "advicebench/scheduling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>

#include "advicebench/errors.hpp"
#include "advicebench/sparsify.hpp"
#include "advicebench/weighted_core.hpp"

namespace advicebench {

namespace {

// Count tables beyond this many cells are treated as corrupt advice.
constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 20;
constexpr std::uint64_t kMaxAdvisedJobs = 64;

std::uint64_t capped_pow(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    r *= base;
  }
  return r;
}

int count_width(std::uint64_t n) { return bits_for_count(n + 1); }

// Exhaustive DFS in lexicographic order. `allowed` may be null.
Schedule enumerate(const std::vector<Job>& jobs,
                   const std::vector<std::vector<char>>* allowed, int m,
                   const Objective& objective) {
  const int n = static_cast<int>(jobs.size());
  if (capped_pow(m, n, kMaxScheduleEnumeration) > kMaxScheduleEnumeration) {
    throw ResourceError("m^n exceeds the brute-force cap of 10^7");
  }
  // loads[d] holds the load vector after the first d jobs, summed in job
  // order so the result matches load_vector exactly.
  std::vector<std::vector<double>> loads(n + 1, std::vector<double>(m, 0.0));
  std::vector<int> assign(n, 0);
  Schedule best;
  bool found = false;
  const bool minimize = objective.minimize();

  auto dfs = [&](auto&& self, int d) -> void {
    if (d == n) {
      const double v = objective.evaluate(loads[n]);
      if (!found || (minimize ? v < best.value : v > best.value)) {
        found = true;
        best.value = v;
        best.assignment = assign;
        best.loads = loads[n];
      }
      return;
    }
    for (int j = 0; j < m; ++j) {
      if (allowed && !(*allowed)[d][j]) continue;
      loads[d + 1] = loads[d];
      loads[d + 1][j] += jobs[d].loads[j];
      assign[d] = j;
      self(self, d + 1);
    }
  };
  dfs(dfs, 0);
  if (!found) throw ContractError("no machine admits some job");
  return best;
}

std::vector<double> unit_norms(const Objective& objective, int m) {
  std::vector<double> u(m);
  for (int j = 0; j < m; ++j) u[j] = objective.unit(j, m);
  return u;
}

int argmin_index(std::span<const double> v) {
  return static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
}

std::vector<double> scaled(const Job& job, std::span<const double> unit) {
  std::vector<double> v(job.loads.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = job.loads[j] * unit[j];
  return v;
}

void validate_jobs(const std::vector<Job>& jobs) {
  if (jobs.empty()) throw ContractError("need at least one job");
  const std::size_t m = jobs.front().loads.size();
  if (m < 1) throw ContractError("need at least one machine");
  for (const auto& job : jobs) {
    if (job.loads.size() != m) throw ContractError("ragged load matrix");
    for (double w : job.loads) {
      if (!(w > 0) || !std::isfinite(w)) {
        throw ContractError("job loads must be positive and finite");
      }
    }
  }
}

void require_norm(const Objective& objective) {
  if (objective.kind != ObjectiveKind::kLpNorm || !objective.minimize() ||
      !(objective.p >= 1)) {
    throw ContractError("minimization runs need an lp norm with p >= 1");
  }
}

void require_homogeneous_max(const Objective& objective) {
  if (objective.minimize()) {
    throw ContractError("maximization run needs a maximization objective");
  }
  // Spot-check monotonicity and f(aL) <= a f(L).
  const std::vector<std::vector<double>> probes{{1, 2, 3}, {5, 0.5, 2}, {0, 4, 1}};
  for (const auto& base : probes) {
    const double f = objective.evaluate(base);
    for (double a : {0.0, 0.5, 2.0, 7.0}) {
      std::vector<double> l = base;
      for (double& x : l) x *= a;
      if (objective.evaluate(l) > a * f * (1 + 1e-12) + 1e-300) {
        throw ContractError("objective is not sub-homogeneous");
      }
    }
    std::vector<double> bigger = base;
    bigger[0] += 1;
    if (objective.evaluate(bigger) < f) {
      throw ContractError("objective is not monotone");
    }
  }
}

// --------------------------------------------------- unrelated, minimize

class UnrelatedMinAlgorithm : public SchedulingAlgorithm {
 public:
  UnrelatedMinAlgorithm(Objective objective, Rational epsilon)
      : objective_(objective), epsilon_(epsilon),
        scale_(half_step_base(epsilon)) {}

  int next(std::span<const Job> seen, AdviceTape& tape) override {
    const std::size_t i = seen.size();
    const Job& job = seen.back();
    if (i == 1) start(job, tape);
    if (broken_) return 0;
    if (verbatim_) {
      const auto j = tape.read_uint_fixed(bits_for_count(m_));
      return j < static_cast<std::uint64_t>(m_) ? static_cast<int>(j) : 0;
    }
    const auto v = scaled(job, units_);
    if (first_ == 0 || i < first_) return argmin_index(v);
    if (i == first_) activate(v, tape);
    if (!active_) return argmin_index(v);
    const auto type = type_of(v);
    if (!type) return argmin_index(v);
    for (int j = 0; j < m_; ++j) {
      auto& left = remaining_[*type * m_ + j];
      if (left > 0) {
        --left;
        return j;
      }
    }
    return argmin_index(v);
  }

 private:
  void start(const Job& job, AdviceTape& tape) {
    m_ = static_cast<int>(job.loads.size());
    units_ = unit_norms(objective_, m_);
    n_ = tape.read_self_delimited();
    if (n_ < 1 || n_ > kMaxAdvisedJobs) {
      broken_ = true;
      return;
    }
    verbatim_ = Rational(static_cast<std::int64_t>(n_)) < 2 / epsilon_;
    if (!verbatim_) first_ = tape.read_uint_fixed(count_width(n_));
  }

  void activate(const std::vector<double>& v, AdviceTape& tape) {
    threshold_ = scale_.threshold(static_cast<int>(n_));
    const auto offset = tape.read_uint_fixed(bits_for_count(threshold_ + 1));
    k_ = static_cast<std::int64_t>(offset) +
         scale_.bucket(*std::min_element(v.begin(), v.end()));
    const std::uint64_t cells = capped_pow(threshold_ + 2, m_, kMaxCells);
    if (cells > kMaxCells) return;
    std::vector<std::uint64_t> counts(cells);
    for (auto& c : counts) c = tape.read_uint_fixed(count_width(n_));

    // Rounded instance: one job per counted type, Bot entries forbidden.
    std::vector<Job> rounded;
    std::vector<std::vector<char>> allowed;
    std::vector<std::size_t> type_of_job;
    std::vector<int> delta(m_);
    for (std::size_t t = 0; t < cells; ++t) {
      if (counts[t] == 0) continue;
      decode(t, delta);
      Job r{std::vector<double>(m_, 0.0)};
      std::vector<char> ok(m_, 0);
      bool any = false;
      for (int j = 0; j < m_; ++j) {
        if (delta[j] > threshold_) continue;
        r.loads[j] = scale_.power(k_ - delta[j] + 1) / units_[j];
        ok[j] = 1;
        any = true;
      }
      if (!any) continue;
      for (std::uint64_t c = 0; c < counts[t] && rounded.size() < n_; ++c) {
        rounded.push_back(r);
        allowed.push_back(ok);
        type_of_job.push_back(t);
      }
    }
    remaining_.assign(cells * m_, 0);
    active_ = true;
    if (rounded.empty()) return;
    if (capped_pow(m_, static_cast<int>(rounded.size()), kMaxScheduleEnumeration) >
        kMaxScheduleEnumeration) {
      active_ = false;
      return;
    }
    const Schedule hat = enumerate(rounded, &allowed, m_, objective_);
    for (std::size_t r = 0; r < rounded.size(); ++r) {
      ++remaining_[type_of_job[r] * m_ + hat.assignment[r]];
    }
  }

  void decode(std::size_t index, std::vector<int>& delta) const {
    for (int j = m_ - 1; j >= 0; --j) {
      delta[j] = static_cast<int>(index % (threshold_ + 2));
      index /= (threshold_ + 2);
    }
  }

  std::optional<std::size_t> type_of(const std::vector<double>& v) const {
    const double vmin = *std::min_element(v.begin(), v.end());
    if (!scale_.power_le(k_ - threshold_, vmin)) return std::nullopt;
    std::size_t index = 0;
    for (int j = 0; j < m_; ++j) {
      const std::int64_t d = k_ - scale_.bucket(v[j]);
      const int entry = d < 0 || d > threshold_ ? threshold_ + 1 : static_cast<int>(d);
      index = index * (threshold_ + 2) + entry;
    }
    return index;
  }

  Objective objective_;
  Rational epsilon_;
  GeometricScale scale_;
  int m_ = 0;
  std::vector<double> units_;
  std::uint64_t n_ = 0;
  bool broken_ = false;
  bool verbatim_ = false;
  std::uint64_t first_ = 0;
  bool active_ = false;
  std::int64_t k_ = 0;
  int threshold_ = 0;
  std::vector<std::uint64_t> remaining_;
};

void write_verbatim(const Schedule& opt, int m, AdviceTape& tape) {
  for (int j : opt.assignment) tape.write_uint_fixed(j, bits_for_count(m));
}

void sandwich(const GeometricScale& scale, std::int64_t k, int delta, double v,
              SchedulingAudit& audit, std::size_t job, int machine) {
  // w < w_hat <= s w with w_hat = s^{k - delta + 1} / unit.
  ++audit.sandwich_checks;
  if (scale.power_le(k - delta + 1, v) || !scale.power_le(k - delta, v)) {
    audit.violations.push_back("rounding sandwich fails for job " +
                               std::to_string(job + 1) + " on machine " +
                               std::to_string(machine + 1));
  }
}

void unrelated_min_oracle(const Objective& objective, const Rational& epsilon,
                          const std::vector<Job>& jobs, const Schedule& opt,
                          AdviceTape& tape, SchedulingAudit& audit) {
  const int n = static_cast<int>(jobs.size());
  const int m = machine_count(jobs);
  tape.write_self_delimited(static_cast<std::uint64_t>(n));
  if (Rational(n) < 2 / epsilon) {
    write_verbatim(opt, m, tape);
    return;
  }
  const GeometricScale scale(half_step_base(epsilon));
  const auto units = unit_norms(objective, m);
  const std::int64_t k = scale.bucket(opt.value);
  const int threshold = scale.threshold(n);
  const std::uint64_t cells = capped_pow(threshold + 2, m, kMaxCells);
  if (cells > kMaxCells) throw ResourceError("type table too large");

  std::vector<std::uint64_t> counts(cells, 0);
  std::uint64_t first = 0;
  std::int64_t first_offset = 0;
  for (int i = 0; i < n; ++i) {
    const auto v = scaled(jobs[i], units);
    const double vmin = *std::min_element(v.begin(), v.end());
    if (!scale.power_le(k - threshold, vmin)) continue;
    ++audit.important_jobs;
    if (first == 0) {
      first = static_cast<std::uint64_t>(i) + 1;
      first_offset = k - scale.bucket(vmin);
    }
    std::size_t index = 0;
    for (int j = 0; j < m; ++j) {
      const std::int64_t d = k - scale.bucket(v[j]);
      int entry = threshold + 1;
      if (d >= 0) {
        entry = static_cast<int>(d);
        sandwich(scale, k, entry, v[j], audit, i, j);
      } else if (j == opt.assignment[i]) {
        audit.violations.push_back("optimum uses a Bot machine for job " +
                                   std::to_string(i + 1));
      }
      index = index * (threshold + 2) + entry;
    }
    ++counts[index];
  }
  tape.write_uint_fixed(first, count_width(n));
  if (first == 0) return;
  tape.write_uint_fixed(static_cast<std::uint64_t>(first_offset),
                        bits_for_count(threshold + 1));
  for (auto c : counts) {
    tape.write_uint_fixed(c, count_width(n));
    audit.counted_jobs += static_cast<std::int64_t>(c);
  }
}

// ----------------------------------------------------- related, minimize

struct RelatedEnv {
  std::vector<double> speeds;
  int fastest = 0;  // argmin unit_j / speed_j
  double b = 0;     // unit_fastest / speed_fastest
};

RelatedEnv related_env(const Objective& objective, std::vector<double> speeds) {
  if (speeds.empty()) throw DomainError("need at least one machine");
  for (double c : speeds) {
    if (!(c > 0) || !std::isfinite(c)) throw DomainError("speeds must be positive");
  }
  RelatedEnv env;
  env.speeds = std::move(speeds);
  const int m = static_cast<int>(env.speeds.size());
  const auto units = unit_norms(objective, m);
  std::vector<double> ratio(m);
  for (int j = 0; j < m; ++j) ratio[j] = units[j] / env.speeds[j];
  env.fastest = argmin_index(ratio);
  env.b = ratio[env.fastest];
  return env;
}

// p_i * B = min_j ||(p_i / C_j) 1_j||.
double scaled_size(const Job& job, std::span<const double> units) {
  double best = job.loads[0] * units[0];
  for (std::size_t j = 1; j < job.loads.size(); ++j) {
    best = std::min(best, job.loads[j] * units[j]);
  }
  return best;
}

class RelatedMinAlgorithm : public SchedulingAlgorithm {
 public:
  RelatedMinAlgorithm(Objective objective, Rational epsilon, RelatedEnv env)
      : objective_(objective), epsilon_(epsilon),
        scale_(half_step_base(epsilon)), env_(std::move(env)) {
    units_ = unit_norms(objective_, static_cast<int>(env_.speeds.size()));
  }

  int next(std::span<const Job> seen, AdviceTape& tape) override {
    const std::size_t i = seen.size();
    const int m = static_cast<int>(env_.speeds.size());
    if (i == 1) {
      n_ = tape.read_self_delimited();
      if (n_ < 1 || n_ > kMaxAdvisedJobs) broken_ = true;
      verbatim_ = !broken_ && Rational(static_cast<std::int64_t>(n_)) < 2 / epsilon_;
      if (!broken_ && !verbatim_) first_ = tape.read_uint_fixed(count_width(n_));
    }
    if (broken_) return env_.fastest;
    if (verbatim_) {
      const auto j = tape.read_uint_fixed(bits_for_count(m));
      return j < static_cast<std::uint64_t>(m) ? static_cast<int>(j) : 0;
    }
    const double v = scaled_size(seen.back(), units_);
    if (first_ == 0 || i < first_) return env_.fastest;
    if (i == first_) activate(v, tape);
    if (!scale_.power_le(k_ - threshold_, v)) return env_.fastest;
    const std::int64_t t = k_ - scale_.bucket(v);
    if (t < 0 || t > threshold_) return env_.fastest;
    for (int j = 0; j < m; ++j) {
      auto& left = remaining_[static_cast<std::size_t>(t) * m + j];
      if (left > 0) {
        --left;
        return j;
      }
    }
    return env_.fastest;
  }

 private:
  void activate(double v, AdviceTape& tape) {
    const int m = static_cast<int>(env_.speeds.size());
    threshold_ = scale_.threshold(static_cast<int>(n_));
    const auto offset = tape.read_uint_fixed(bits_for_count(threshold_ + 1));
    k_ = static_cast<std::int64_t>(offset) + scale_.bucket(v);
    std::vector<Job> rounded;
    std::vector<int> type_of_job;
    for (int t = 0; t <= threshold_; ++t) {
      const auto count = tape.read_uint_fixed(count_width(n_));
      const double size = scale_.power(k_ - t + 1) / env_.b;
      Job r{std::vector<double>(m)};
      for (int j = 0; j < m; ++j) r.loads[j] = size / env_.speeds[j];
      for (std::uint64_t c = 0; c < count && rounded.size() < n_; ++c) {
        rounded.push_back(r);
        type_of_job.push_back(t);
      }
    }
    remaining_.assign(static_cast<std::size_t>(threshold_ + 1) * m, 0);
    if (rounded.empty() ||
        capped_pow(m, static_cast<int>(rounded.size()), kMaxScheduleEnumeration) >
            kMaxScheduleEnumeration) {
      return;
    }
    const Schedule hat = enumerate(rounded, nullptr, m, objective_);
    for (std::size_t r = 0; r < rounded.size(); ++r) {
      ++remaining_[static_cast<std::size_t>(type_of_job[r]) * m + hat.assignment[r]];
    }
  }

  Objective objective_;
  Rational epsilon_;
  GeometricScale scale_;
  RelatedEnv env_;
  std::vector<double> units_;
  std::uint64_t n_ = 0;
  bool broken_ = false;
  bool verbatim_ = false;
  std::uint64_t first_ = 0;
  std::int64_t k_ = 0;
  int threshold_ = 0;
  std::vector<std::uint64_t> remaining_;
};

void related_min_oracle(const Objective& objective, const Rational& epsilon,
                        const RelatedEnv& env, const std::vector<Job>& jobs,
                        const Schedule& opt, AdviceTape& tape,
                        SchedulingAudit& audit) {
  const int n = static_cast<int>(jobs.size());
  const int m = static_cast<int>(env.speeds.size());
  if (machine_count(jobs) != m) {
    throw ContractError("jobs and speeds disagree on the machine count");
  }
  tape.write_self_delimited(static_cast<std::uint64_t>(n));
  if (Rational(n) < 2 / epsilon) {
    write_verbatim(opt, m, tape);
    return;
  }
  const GeometricScale scale(half_step_base(epsilon));
  const auto units = unit_norms(objective, m);
  const std::int64_t k = scale.bucket(opt.value);
  const int threshold = scale.threshold(n);
  std::vector<std::uint64_t> counts(threshold + 1, 0);
  std::uint64_t first = 0;
  std::int64_t first_offset = 0;
  for (int i = 0; i < n; ++i) {
    const double v = scaled_size(jobs[i], units);
    if (!scale.power_le(k - threshold, v)) continue;
    ++audit.important_jobs;
    const std::int64_t t = k - scale.bucket(v);
    if (t < 0) {
      audit.violations.push_back("job " + std::to_string(i + 1) +
                                 " exceeds the optimum's norm bucket");
      continue;
    }
    sandwich(scale, k, static_cast<int>(t), v, audit, i, env.fastest);
    if (first == 0) {
      first = static_cast<std::uint64_t>(i) + 1;
      first_offset = t;
    }
    ++counts[t];
  }
  tape.write_uint_fixed(first, count_width(n));
  if (first == 0) return;
  tape.write_uint_fixed(static_cast<std::uint64_t>(first_offset),
                        bits_for_count(threshold + 1));
  for (auto c : counts) {
    tape.write_uint_fixed(c, count_width(n));
    audit.counted_jobs += static_cast<std::int64_t>(c);
  }
}

// -------------------------------------------------- unrelated, maximize

bool max_sched_verbatim(int n, const Rational& epsilon) {
  return Rational(n) < 2 + 2 / epsilon;
}

class UnrelatedMaxAlgorithm : public SchedulingAlgorithm {
 public:
  UnrelatedMaxAlgorithm(Objective objective, Rational epsilon)
      : objective_(objective), epsilon_(epsilon),
        scale_(half_step_base(epsilon)) {}

  int next(std::span<const Job> seen, AdviceTape& tape) override {
    const std::size_t i = seen.size();
    const Job& job = seen.back();
    if (i == 1) start(job, tape);
    if (broken_) return 0;
    if (verbatim_) {
      const auto j = tape.read_uint_fixed(bits_for_count(m_));
      return j < static_cast<std::uint64_t>(m_) ? static_cast<int>(j) : 0;
    }
    while (phase_ < m_ && starts_[phase_] == i) open_phase(job, tape);
    if (phase_ == 0 || table_.empty()) return 0;
    std::size_t index = 0;
    for (int q = 0; q < phase_; ++q) {
      index = index * (threshold_ + 2) + entry(job, perm_[q]);
    }
    for (int q = 0; q < phase_; ++q) {
      auto& left = table_[index * phase_ + q];
      if (left > 0) {
        --left;
        return perm_[q];
      }
    }
    return 0;
  }

 private:
  void start(const Job& job, AdviceTape& tape) {
    m_ = static_cast<int>(job.loads.size());
    n_ = tape.read_self_delimited();
    if (n_ < 1 || n_ > kMaxAdvisedJobs) {
      broken_ = true;
      return;
    }
    verbatim_ = max_sched_verbatim(static_cast<int>(n_), epsilon_);
    if (verbatim_) return;
    threshold_ = scale_.threshold(static_cast<int>(n_));
    perm_.resize(m_);
    std::vector<char> used(m_, 0);
    for (int q = 0; q < m_; ++q) {
      const auto j = tape.read_uint_fixed(bits_for_count(m_));
      if (j >= static_cast<std::uint64_t>(m_) || used[j]) broken_ = true;
      perm_[q] = j < static_cast<std::uint64_t>(m_) ? static_cast<int>(j) : 0;
      if (j < static_cast<std::uint64_t>(m_)) used[j] = 1;
    }
    starts_.resize(m_);
    for (auto& s : starts_) s = tape.read_uint_fixed(count_width(n_));
    k_.assign(m_, 0);
  }

  void open_phase(const Job& job, AdviceTape& tape) {
    const int j = perm_[phase_];
    const auto delta = tape.read_uint_fixed(bits_for_count(threshold_ + 1));
    k_[j] = static_cast<std::int64_t>(delta) + scale_.bucket(job.loads[j]);
    ++phase_;
    const std::uint64_t types = capped_pow(threshold_ + 2, phase_, kMaxCells);
    if (types * phase_ > kMaxCells) {
      table_.clear();
      return;
    }
    table_.assign(types * phase_, 0);
    for (auto& c : table_) c = tape.read_uint_fixed(count_width(n_));
  }

  int entry(const Job& job, int j) const {
    const std::int64_t d = k_[j] - scale_.bucket(job.loads[j]);
    return d < 0 || d > threshold_ ? threshold_ + 1 : static_cast<int>(d);
  }

  Objective objective_;
  Rational epsilon_;
  GeometricScale scale_;
  int m_ = 0;
  std::uint64_t n_ = 0;
  bool broken_ = false;
  bool verbatim_ = false;
  int threshold_ = 0;
  std::vector<int> perm_;
  std::vector<std::uint64_t> starts_;
  std::vector<std::int64_t> k_;
  int phase_ = 0;
  std::vector<std::uint64_t> table_;
};

void unrelated_max_oracle(const Rational& epsilon, const std::vector<Job>& jobs,
                          const Schedule& opt, AdviceTape& tape,
                          SchedulingAudit& audit) {
  const int n = static_cast<int>(jobs.size());
  const int m = machine_count(jobs);
  tape.write_self_delimited(static_cast<std::uint64_t>(n));
  if (max_sched_verbatim(n, epsilon)) {
    write_verbatim(opt, m, tape);
    return;
  }
  const GeometricScale scale(half_step_base(epsilon));
  const int threshold = scale.threshold(n);
  std::vector<std::int64_t> k(m, 0);
  for (int j = 0; j < m; ++j) {
    if (opt.loads[j] > 0) k[j] = scale.bucket(opt.loads[j]);
  }
  // Important: the job is not negligible on its optimal machine.
  std::vector<char> important(n, 0);
  std::vector<std::uint64_t> start(m, 0);
  for (int i = 0; i < n; ++i) {
    const int j = opt.assignment[i];
    if (!scale.power_le(k[j] - threshold, jobs[i].loads[j])) continue;
    important[i] = 1;
    ++audit.important_jobs;
    if (start[j] == 0) start[j] = static_cast<std::uint64_t>(i) + 1;
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    if ((start[a] == 0) != (start[b] == 0)) return start[b] == 0;
    return start[a] < start[b];
  });
  for (int j : perm) tape.write_uint_fixed(j, bits_for_count(m));
  for (int j : perm) tape.write_uint_fixed(start[j], count_width(n));

  std::vector<int> position(m);
  for (int q = 0; q < m; ++q) position[perm[q]] = q;
  for (int p = 1; p <= m && start[perm[p - 1]] != 0; ++p) {
    const int opened = perm[p - 1];
    const int first = static_cast<int>(start[opened]) - 1;
    const int last = p < m && start[perm[p]] != 0
                         ? static_cast<int>(start[perm[p]]) - 1
                         : n;
    const std::int64_t delta = k[opened] - scale.bucket(jobs[first].loads[opened]);
    tape.write_uint_fixed(static_cast<std::uint64_t>(delta),
                          bits_for_count(threshold + 1));
    const std::uint64_t types = capped_pow(threshold + 2, p, kMaxCells);
    if (types * p > kMaxCells) throw ResourceError("type table too large");
    std::vector<std::uint64_t> table(types * p, 0);
    for (int i = first; i < last; ++i) {
      if (!important[i]) continue;
      std::size_t index = 0;
      for (int q = 0; q < p; ++q) {
        const int j = perm[q];
        const std::int64_t d = k[j] - scale.bucket(jobs[i].loads[j]);
        int e = threshold + 1;
        if (d >= 0 && d <= threshold) {
          e = static_cast<int>(d);
          sandwich(scale, k[j], e, jobs[i].loads[j], audit, i, j);
        } else if (j == opt.assignment[i]) {
          audit.violations.push_back("optimum uses a Bot machine for job " +
                                     std::to_string(i + 1));
        }
        index = index * (threshold + 2) + e;
      }
      const int q = position[opt.assignment[i]];
      if (q >= p) {
        audit.violations.push_back("job " + std::to_string(i + 1) +
                                   " precedes its machine's phase");
        continue;
      }
      ++table[index * p + q];
    }
    for (auto c : table) {
      tape.write_uint_fixed(c, count_width(n));
      audit.counted_jobs += static_cast<std::int64_t>(c);
    }
  }
}

std::string assignment_string(std::span<const int> assignment) {
  std::string s;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(assignment[i] + 1);
  }
  return s;
}

void check_ratio(RunReport& r, double bound) {
  if (r.alg_feasible && r.ratio > bound * (1 + 1e-12)) {
    r.violations.push_back("ratio above guarantee");
  }
}

}  // namespace

double Objective::evaluate(std::span<const double> loads) const {
  if (kind == ObjectiveKind::kMinLoad) {
    return loads.empty() ? 0.0 : *std::min_element(loads.begin(), loads.end());
  }
  if (std::isinf(p)) {
    double best = 0.0;
    for (double l : loads) best = std::max(best, std::abs(l));
    return best;
  }
  if (p == 1) {
    double sum = 0.0;
    for (double l : loads) sum += std::abs(l);
    return sum;
  }
  if (p == 2) {
    double sum = 0.0;
    for (double l : loads) sum += l * l;
    return std::sqrt(sum);
  }
  double sum = 0.0;
  for (double l : loads) sum += std::pow(std::abs(l), p);
  return std::pow(sum, 1.0 / p);
}

double Objective::unit(int j, int m) const {
  std::vector<double> e(m, 0.0);
  e[j] = 1.0;
  return evaluate(e);
}

std::string Objective::describe() const {
  if (kind == ObjectiveKind::kMinLoad) return "minload";
  if (std::isinf(p)) return "lp-inf";
  std::string s = std::to_string(p);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return "lp-" + s;
}

int machine_count(const std::vector<Job>& jobs) {
  if (jobs.empty()) throw ContractError("need at least one job");
  return static_cast<int>(jobs.front().loads.size());
}

std::vector<double> load_vector(const std::vector<Job>& jobs,
                                std::span<const int> assignment, int m) {
  if (assignment.size() != jobs.size()) {
    throw ContractError("assignment length differs from the job count");
  }
  std::vector<double> loads(m, 0.0);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const int j = assignment[i];
    if (j < 0 || j >= m) throw ContractError("machine index out of range");
    loads[j] += jobs[i].loads[j];
  }
  return loads;
}

Schedule brute_force_schedule(const std::vector<Job>& jobs,
                              const Objective& objective) {
  validate_jobs(jobs);
  return enumerate(jobs, nullptr, machine_count(jobs), objective);
}

std::vector<Job> related_jobs(std::span<const double> sizes,
                              std::span<const double> speeds) {
  for (double c : speeds) {
    if (!(c > 0)) throw DomainError("speeds must be positive");
  }
  std::vector<Job> jobs;
  for (double p : sizes) {
    Job job;
    for (double c : speeds) job.loads.push_back(p / c);
    jobs.push_back(std::move(job));
  }
  return jobs;
}

std::vector<int> serve_jobs(const std::vector<Job>& jobs,
                            SchedulingAlgorithm& algorithm, AdviceTape& tape) {
  std::vector<int> out;
  std::span<const Job> all(jobs);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    out.push_back(algorithm.next(all.first(i + 1), tape));
  }
  return out;
}

SchedulingScheme unrelated_min_scheme(const Objective& objective,
                                      const Rational& epsilon) {
  require_norm(objective);
  SchedulingScheme s;
  s.name = "unrelated-min";
  s.oracle = [objective, epsilon](const std::vector<Job>& jobs,
                                  const Schedule& opt, AdviceTape& tape,
                                  SchedulingAudit& audit) {
    unrelated_min_oracle(objective, epsilon, jobs, opt, tape, audit);
  };
  s.make_algorithm = [objective, epsilon]() -> std::unique_ptr<SchedulingAlgorithm> {
    return std::make_unique<UnrelatedMinAlgorithm>(objective, epsilon);
  };
  return s;
}

SchedulingScheme related_min_scheme(const Objective& objective,
                                    const Rational& epsilon,
                                    std::vector<double> speeds) {
  require_norm(objective);
  const RelatedEnv env = related_env(objective, std::move(speeds));
  SchedulingScheme s;
  s.name = "related-min";
  s.oracle = [objective, epsilon, env](const std::vector<Job>& jobs,
                                       const Schedule& opt, AdviceTape& tape,
                                       SchedulingAudit& audit) {
    related_min_oracle(objective, epsilon, env, jobs, opt, tape, audit);
  };
  s.make_algorithm = [objective, epsilon,
                      env]() -> std::unique_ptr<SchedulingAlgorithm> {
    return std::make_unique<RelatedMinAlgorithm>(objective, epsilon, env);
  };
  return s;
}

SchedulingScheme unrelated_max_scheme(const Objective& objective,
                                      const Rational& epsilon) {
  require_homogeneous_max(objective);
  SchedulingScheme s;
  s.name = "unrelated-max";
  s.oracle = [epsilon](const std::vector<Job>& jobs, const Schedule& opt,
                       AdviceTape& tape, SchedulingAudit& audit) {
    unrelated_max_oracle(epsilon, jobs, opt, tape, audit);
  };
  s.make_algorithm = [objective, epsilon]() -> std::unique_ptr<SchedulingAlgorithm> {
    return std::make_unique<UnrelatedMaxAlgorithm>(objective, epsilon);
  };
  return s;
}

RunReport run_scheduling(const std::vector<Job>& jobs,
                         const Objective& objective,
                         const SchedulingScheme& scheme, AdviceTape& tape) {
  const auto t0 = std::chrono::steady_clock::now();
  validate_jobs(jobs);
  const int m = machine_count(jobs);
  const Schedule opt = brute_force_schedule(jobs, objective);
  SchedulingAudit audit;
  scheme.oracle(jobs, opt, tape, audit);
  auto algorithm = scheme.make_algorithm();
  const auto assignment = serve_jobs(jobs, *algorithm, tape);

  RunReport r;
  r.problem = "scheduling";
  r.n = static_cast<int>(jobs.size());
  r.algorithm = scheme.name;
  r.params = {{"m", std::to_string(m)}, {"objective", objective.describe()}};
  r.alg_feasible = std::all_of(assignment.begin(), assignment.end(),
                               [m](int j) { return j >= 0 && j < m; });
  if (r.alg_feasible) {
    r.alg_score = objective.evaluate(load_vector(jobs, assignment, m));
  }
  r.opt_score = opt.value;
  r.ratio = r.alg_feasible
                ? competitive_ratio(objective.minimize(), r.alg_score, r.opt_score)
                : std::numeric_limits<double>::infinity();
  r.bits_read = tape.bits_read();
  r.output = assignment_string(assignment);
  r.tape_hex = tape.to_hex();
  r.violations = audit.violations;
  if (audit.counted_jobs != audit.important_jobs) {
    r.violations.push_back("count conservation: wrote " +
                           std::to_string(audit.counted_jobs) + " for " +
                           std::to_string(audit.important_jobs) +
                           " important jobs");
  }
  r.params["important_jobs"] = std::to_string(audit.important_jobs);
  r.params["sandwich_checks"] = std::to_string(audit.sandwich_checks);
  r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return r;
}

RunReport unrelated_min_run(const std::vector<Job>& jobs,
                            const Objective& objective,
                            const Rational& epsilon, AdviceTape& tape) {
  RunReport r = run_scheduling(jobs, objective,
                               unrelated_min_scheme(objective, epsilon), tape);
  r.params["epsilon"] = to_string(epsilon);
  r.advice_bound = unrelated_min_advice_bound(r.n, machine_count(jobs), epsilon);
  const double s = to_double(half_step_base(epsilon));
  check_ratio(r, s + 1.0 / r.n);
  return r;
}

RunReport related_min_run(std::span<const double> sizes,
                          std::span<const double> speeds,
                          const Objective& objective, const Rational& epsilon,
                          AdviceTape& tape) {
  const auto jobs = related_jobs(sizes, speeds);
  RunReport r = run_scheduling(
      jobs, objective,
      related_min_scheme(objective, epsilon,
                         std::vector<double>(speeds.begin(), speeds.end())),
      tape);
  r.params["epsilon"] = to_string(epsilon);
  r.advice_bound = related_min_advice_bound(r.n, machine_count(jobs), epsilon);
  const double s = to_double(half_step_base(epsilon));
  check_ratio(r, s + 1.0 / r.n);
  return r;
}

RunReport unrelated_max_run(const std::vector<Job>& jobs,
                            const Objective& objective,
                            const Rational& epsilon, AdviceTape& tape) {
  RunReport r = run_scheduling(jobs, objective,
                               unrelated_max_scheme(objective, epsilon), tape);
  r.params["epsilon"] = to_string(epsilon);
  r.advice_bound = unrelated_max_advice_bound(r.n, machine_count(jobs), epsilon);
  check_ratio(r, to_double(1 + epsilon));
  return r;
}

double unrelated_min_advice_bound(int n, int m, const Rational& epsilon) {
  const int header = self_delimited_size(static_cast<std::uint64_t>(n));
  if (Rational(n) < 2 / epsilon) return header + n * bits_for_count(m);
  const int t = GeometricScale(half_step_base(epsilon)).threshold(n);
  const double cells = std::pow(t + 2.0, m);
  return header + count_width(n) + bits_for_count(t + 1) + cells * count_width(n);
}

double related_min_advice_bound(int n, int m, const Rational& epsilon) {
  const int header = self_delimited_size(static_cast<std::uint64_t>(n));
  if (Rational(n) < 2 / epsilon) return header + n * bits_for_count(m);
  const int t = GeometricScale(half_step_base(epsilon)).threshold(n);
  return header + count_width(n) + bits_for_count(t + 1) +
         (t + 1.0) * count_width(n);
}

double unrelated_max_advice_bound(int n, int m, const Rational& epsilon) {
  const int header = self_delimited_size(static_cast<std::uint64_t>(n));
  if (max_sched_verbatim(n, epsilon)) return header + n * bits_for_count(m);
  const int t = GeometricScale(half_step_base(epsilon)).threshold(n);
  double bits = header + m * bits_for_count(m) + m * count_width(n);
  for (int p = 1; p <= m; ++p) {
    bits += bits_for_count(t + 1) + std::pow(t + 2.0, p) * p * count_width(n);
  }
  return bits;
}

}  // namespace advicebench
