#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "advicebench/advice_tape.hpp"
#include "advicebench/rational.hpp"
#include "advicebench/report.hpp"

namespace advicebench {

// A job with one load per machine. Related machines use size / speed_j.
struct Job {
  std::vector<double> loads;
};

enum class ObjectiveKind { kLpNorm, kMinLoad };
enum class Goal { kMinimize, kMaximize };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::kLpNorm;
  double p = std::numeric_limits<double>::infinity();
  Goal goal = Goal::kMinimize;

  static Objective lp(double p) { return {ObjectiveKind::kLpNorm, p, Goal::kMinimize}; }
  static Objective makespan() { return lp(std::numeric_limits<double>::infinity()); }
  static Objective min_load() { return {ObjectiveKind::kMinLoad, 0, Goal::kMaximize}; }

  // (sum L_j^p)^(1/p), max for p = inf; min_j L_j for kMinLoad.
  double evaluate(std::span<const double> loads) const;
  // Value of the unit vector e_j in an m-machine system.
  double unit(int j, int m) const;
  bool minimize() const { return goal == Goal::kMinimize; }
  std::string describe() const;
};

struct Schedule {
  std::vector<int> assignment;  // 0-based machine per job
  std::vector<double> loads;
  double value = 0.0;
};

// Largest m^n brute_force_schedule will enumerate.
inline constexpr std::uint64_t kMaxScheduleEnumeration = 10'000'000;

int machine_count(const std::vector<Job>& jobs);
std::vector<double> load_vector(const std::vector<Job>& jobs,
                                std::span<const int> assignment, int m);

// Exhaustive search; ties go to the lexicographically smallest assignment.
Schedule brute_force_schedule(const std::vector<Job>& jobs,
                              const Objective& objective);

// Loads size_i / speed_j.
std::vector<Job> related_jobs(std::span<const double> sizes,
                              std::span<const double> speeds);

class SchedulingAlgorithm {
 public:
  virtual ~SchedulingAlgorithm() = default;
  // Machine (0-based) for the last job in `seen`.
  virtual int next(std::span<const Job> seen, AdviceTape& tape) = 0;
};

// Invariants gathered by an oracle while it writes advice.
struct SchedulingAudit {
  int important_jobs = 0;
  std::int64_t counted_jobs = 0;  // sum of written counts
  int sandwich_checks = 0;
  std::vector<std::string> violations;
};

struct SchedulingScheme {
  std::string name;
  std::function<void(const std::vector<Job>&, const Schedule& optimal,
                     AdviceTape&, SchedulingAudit&)>
      oracle;
  std::function<std::unique_ptr<SchedulingAlgorithm>()> make_algorithm;
};

std::vector<int> serve_jobs(const std::vector<Job>& jobs,
                            SchedulingAlgorithm& algorithm, AdviceTape& tape);

// Unrelated machines, minimizing a monotone norm.
SchedulingScheme unrelated_min_scheme(const Objective& objective,
                                      const Rational& epsilon);
// Related machines, minimizing a monotone norm. Jobs are given as loads
// size / speed_j; speeds are part of the known machine environment.
SchedulingScheme related_min_scheme(const Objective& objective,
                                    const Rational& epsilon,
                                    std::vector<double> speeds);
// Unrelated machines, maximizing a monotone objective with f(aL) <= a f(L).
SchedulingScheme unrelated_max_scheme(const Objective& objective,
                                      const Rational& epsilon);

RunReport run_scheduling(const std::vector<Job>& jobs,
                         const Objective& objective,
                         const SchedulingScheme& scheme, AdviceTape& tape);

RunReport unrelated_min_run(const std::vector<Job>& jobs,
                            const Objective& objective,
                            const Rational& epsilon, AdviceTape& tape);
RunReport related_min_run(std::span<const double> sizes,
                          std::span<const double> speeds,
                          const Objective& objective, const Rational& epsilon,
                          AdviceTape& tape);
RunReport unrelated_max_run(const std::vector<Job>& jobs,
                            const Objective& objective,
                            const Rational& epsilon, AdviceTape& tape);

// Exact advice budgets of the layouts above at n jobs and m machines.
double unrelated_min_advice_bound(int n, int m, const Rational& epsilon);
double related_min_advice_bound(int n, int m, const Rational& epsilon);
double unrelated_max_advice_bound(int n, int m, const Rational& epsilon);

}  // namespace advicebench
