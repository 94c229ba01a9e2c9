#include "advicebench/aoc_problems.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <map>
#include <numeric>

#include "advicebench/errors.hpp"

namespace advicebench {

namespace {

constexpr std::array<std::pair<Problem, std::string_view>, 9> kProblemNames{{
    {Problem::kMinAsg, "minasg"},
    {Problem::kVertexCover, "vertex_cover"},
    {Problem::kDominatingSet, "dominating_set"},
    {Problem::kCycleFinding, "cycle_finding"},
    {Problem::kSetCover, "set_cover"},
    {Problem::kIndependentSet, "independent_set"},
    {Problem::kClique, "clique"},
    {Problem::kMatching, "matching"},
    {Problem::kDisjointPath, "disjoint_path"},
}};

template <typename T>
const T& payload_as(const Request& r, Problem problem) {
  if (const T* p = std::get_if<T>(&r.payload)) return *p;
  throw ContractError("request payload does not match problem " +
                      std::string(to_string(problem)));
}

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

// Adjacency masks of a vertex-arrival graph.
std::vector<std::uint64_t> adjacency(const Instance& instance) {
  const int n = instance.size();
  std::vector<std::uint64_t> adj(n, 0);
  for (int i = 0; i < n; ++i) {
    const auto& arrival = payload_as<VertexArrival>(instance.requests[i],
                                                    instance.problem);
    for (int j : arrival.earlier_neighbors) {
      adj[i] |= bit(j);
      adj[j] |= bit(i);
    }
  }
  return adj;
}

// Precomputed feasibility test over accepted-request masks.
//
// Every maximization problem here is "accepted requests are pairwise
// compatible", so it reduces to an independent set in a conflict graph.
class FeasibilityChecker {
 public:
  explicit FeasibilityChecker(const Instance& instance)
      : problem_(instance.problem), n_(instance.size()) {
    if (n_ > BitString::kMaxLength) {
      throw ResourceError("instances are limited to 64 requests");
    }
    instance.validate();
    switch (problem_) {
      case Problem::kMinAsg:
        for (int i = 0; i < n_; ++i) {
          if (payload_as<AsgBit>(instance.requests[i], problem_).value) {
            required_ |= bit(i);
          }
        }
        break;
      case Problem::kVertexCover:
      case Problem::kDominatingSet:
        adj_ = adjacency(instance);
        break;
      case Problem::kCycleFinding:
        for (int i = 0; i < n_; ++i) {
          for (int j : payload_as<VertexArrival>(instance.requests[i], problem_)
                           .earlier_neighbors) {
            edges_.emplace_back(j, i);
          }
        }
        break;
      case Problem::kSetCover:
        universe_ = low_bits(instance.universe_size);
        for (const auto& r : instance.requests) {
          std::uint64_t m = 0;
          for (int e : payload_as<Subset>(r, problem_).elements) m |= bit(e - 1);
          subsets_.push_back(m);
        }
        break;
      case Problem::kIndependentSet:
        conflict_ = adjacency(instance);
        break;
      case Problem::kClique: {
        const auto adj = adjacency(instance);
        conflict_.resize(n_);
        for (int i = 0; i < n_; ++i) {
          conflict_[i] = ~adj[i] & low_bits(n_) & ~bit(i);
        }
        break;
      }
      case Problem::kMatching: {
        conflict_.assign(n_, 0);
        for (int i = 0; i < n_; ++i) {
          const auto& a = payload_as<Edge>(instance.requests[i], problem_);
          for (int j = 0; j < i; ++j) {
            const auto& b = payload_as<Edge>(instance.requests[j], problem_);
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) {
              conflict_[i] |= bit(j);
              conflict_[j] |= bit(i);
            }
          }
        }
        break;
      }
      case Problem::kDisjointPath: {
        conflict_.assign(n_, 0);
        for (int i = 0; i < n_; ++i) {
          const auto& a = payload_as<Subpath>(instance.requests[i], problem_);
          for (int j = 0; j < i; ++j) {
            const auto& b = payload_as<Subpath>(instance.requests[j], problem_);
            if (std::max(a.start, b.start) < std::min(a.end, b.end)) {
              conflict_[i] |= bit(j);
              conflict_[j] |= bit(i);
            }
          }
        }
        break;
      }
    }
  }

  // `output` is the raw AOC output mask.
  bool operator()(std::uint64_t output) const {
    if (is_minimization(problem_)) return min_feasible(output);
    const std::uint64_t accepted = ~output & low_bits(n_);
    for (std::uint64_t rest = accepted; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      if (conflict_[i] & accepted) return false;
    }
    return true;
  }

 private:
  bool min_feasible(std::uint64_t accepted) const {
    switch (problem_) {
      case Problem::kMinAsg:
        return (required_ & ~accepted) == 0;
      case Problem::kVertexCover:
        for (int v = 0; v < n_; ++v) {
          if (!(accepted & bit(v)) && (adj_[v] & ~accepted)) return false;
        }
        return true;
      case Problem::kDominatingSet:
        for (int v = 0; v < n_; ++v) {
          if (!(accepted & bit(v)) && !(adj_[v] & accepted)) return false;
        }
        return true;
      case Problem::kCycleFinding:
        return has_cycle(accepted);
      case Problem::kSetCover: {
        std::uint64_t covered = 0;
        for (std::uint64_t rest = accepted; rest != 0; rest &= rest - 1) {
          covered |= subsets_[std::countr_zero(rest)];
        }
        return (covered & universe_) == universe_;
      }
      default:
        return false;
    }
  }

  // An induced subgraph has a cycle iff some induced edge joins two
  // vertices that are already connected.
  bool has_cycle(std::uint64_t accepted) const {
    std::array<int, 64> parent{};
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (auto [a, b] : edges_) {
      if (!(accepted & bit(a)) || !(accepted & bit(b))) continue;
      const int ra = find(a);
      const int rb = find(b);
      if (ra == rb) return true;
      parent[ra] = rb;
    }
    return false;
  }

  Problem problem_;
  int n_;
  std::uint64_t required_ = 0;
  std::uint64_t universe_ = 0;
  std::vector<std::uint64_t> adj_;
  std::vector<std::uint64_t> conflict_;
  std::vector<std::uint64_t> subsets_;
  std::vector<std::pair<int, int>> edges_;
};

double score_of(const Instance& instance, std::uint64_t output,
                bool unit_weights) {
  const bool minimize = is_minimization(instance.problem);
  double total = 0.0;
  for (int i = 0; i < instance.size(); ++i) {
    const bool y = (output >> i) & 1U;
    if (y == minimize) total += unit_weights ? 1.0 : instance.requests[i].weight;
  }
  return total;
}

Outcome make_outcome(const Instance& instance, const BitString& output,
                     bool unit_weights) {
  if (output.size() != instance.size()) {
    throw ContractError("output length " + std::to_string(output.size()) +
                        " does not match instance length " +
                        std::to_string(instance.size()));
  }
  Outcome out;
  out.output = output;
  out.feasible = FeasibilityChecker(instance)(output.mask());
  if (out.feasible) {
    out.score = score_of(instance, output.mask(), unit_weights);
  } else {
    out.score = is_minimization(instance.problem)
                    ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace

bool is_minimization(Problem problem) {
  switch (problem) {
    case Problem::kMinAsg:
    case Problem::kVertexCover:
    case Problem::kDominatingSet:
    case Problem::kCycleFinding:
    case Problem::kSetCover:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(Problem problem) {
  for (auto [p, name] : kProblemNames) {
    if (p == problem) return name;
  }
  return "unknown";
}

Problem parse_problem(std::string_view name) {
  for (auto [p, n] : kProblemNames) {
    if (n == name) return p;
  }
  // Short aliases used on the command line.
  static const std::map<std::string_view, Problem> kAliases{
      {"asg", Problem::kMinAsg},          {"vc", Problem::kVertexCover},
      {"ds", Problem::kDominatingSet},    {"cycle", Problem::kCycleFinding},
      {"sc", Problem::kSetCover},         {"is", Problem::kIndependentSet},
      {"dpa", Problem::kDisjointPath},
  };
  if (auto it = kAliases.find(name); it != kAliases.end()) return it->second;
  throw ContractError("unknown problem '" + std::string(name) + "'");
}

void Instance::validate() const {
  if (requests.empty()) throw ContractError("instance has no requests");
  const int n = size();
  for (int i = 0; i < n; ++i) {
    const Request& r = requests[i];
    if (!(r.weight > 0.0)) {
      throw ContractError("request " + std::to_string(i + 1) +
                          " has a non-positive weight");
    }
    switch (problem) {
      case Problem::kMinAsg:
        payload_as<AsgBit>(r, problem);
        break;
      case Problem::kVertexCover:
      case Problem::kDominatingSet:
      case Problem::kCycleFinding:
      case Problem::kIndependentSet:
      case Problem::kClique:
        for (int j : payload_as<VertexArrival>(r, problem).earlier_neighbors) {
          if (j < 0 || j >= i) {
            throw ContractError("vertex " + std::to_string(i + 1) +
                                " lists a neighbor that is not earlier");
          }
        }
        break;
      case Problem::kMatching: {
        const auto& e = payload_as<Edge>(r, problem);
        if (e.u == e.v) throw ContractError("matching edge is a self-loop");
        break;
      }
      case Problem::kDisjointPath: {
        const auto& p = payload_as<Subpath>(r, problem);
        if (p.start < 1 || p.end > path_length || p.start >= p.end) {
          throw ContractError("subpath endpoints outside the path");
        }
        break;
      }
      case Problem::kSetCover: {
        if (universe_size < 1 || universe_size > 64) {
          throw ContractError("set cover universe must have 1..64 elements");
        }
        for (int e : payload_as<Subset>(r, problem).elements) {
          if (e < 1 || e > universe_size) {
            throw ContractError("subset element outside the universe");
          }
        }
        break;
      }
    }
  }
}

std::vector<double> Instance::weights() const {
  std::vector<double> w;
  w.reserve(requests.size());
  for (const auto& r : requests) w.push_back(r.weight);
  return w;
}

bool check_feasible(const Instance& instance, const BitString& output) {
  if (output.size() != instance.size()) {
    throw ContractError("output length does not match instance length");
  }
  return FeasibilityChecker(instance)(output.mask());
}

Outcome evaluate(const Instance& instance, const BitString& output) {
  return make_outcome(instance, output, false);
}

Outcome evaluate_unweighted(const Instance& instance, const BitString& output) {
  return make_outcome(instance, output, true);
}

Outcome brute_force_opt(const Instance& instance) {
  const int n = instance.size();
  if (n > kMaxBruteForceRequests) {
    throw ResourceError("brute force is limited to " +
                        std::to_string(kMaxBruteForceRequests) + " requests");
  }
  const FeasibilityChecker feasible(instance);
  const bool minimize = is_minimization(instance.problem);
  const std::uint64_t count = std::uint64_t{1} << n;

  bool found = false;
  std::uint64_t best = 0;
  double best_score = 0.0;
  std::uint64_t best_value = 0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    if (!feasible(mask)) continue;
    const double score = score_of(instance, mask, false);
    const bool better = !found || (minimize ? score < best_score
                                            : score > best_score);
    if (better) {
      found = true;
      best = mask;
      best_score = score;
      best_value = BitString::from_mask(n, mask).value();
    } else if (score == best_score) {
      const std::uint64_t value = BitString::from_mask(n, mask).value();
      if (value < best_value) {
        best = mask;
        best_value = value;
      }
    }
  }
  if (!found) throw ContractError("instance has no feasible output");
  return Outcome{BitString::from_mask(n, best), true, best_score};
}

Instance unweighted(const Instance& instance) {
  Instance copy = instance;
  for (auto& r : copy.requests) r.weight = 1.0;
  return copy;
}

Instance restrict_to(const Instance& instance, std::span<const int> indices) {
  Instance sub;
  sub.problem = instance.problem;
  sub.universe_size = instance.universe_size;
  sub.path_length = instance.path_length;
  std::vector<int> new_index(instance.requests.size(), -1);
  for (int k = 0; k < static_cast<int>(indices.size()); ++k) {
    const int i = indices[k];
    new_index[i] = k;
    Request r = instance.requests[i];
    if (auto* arrival = std::get_if<VertexArrival>(&r.payload)) {
      std::vector<int> kept;
      for (int j : arrival->earlier_neighbors) {
        if (new_index[j] >= 0) kept.push_back(new_index[j]);
      }
      arrival->earlier_neighbors = std::move(kept);
    }
    sub.requests.push_back(std::move(r));
  }
  return sub;
}

BitString serve(const Instance& instance, OnlineAlgorithm& algorithm,
                AdviceTape& tape) {
  BitString out(instance.size());
  std::span<const Request> all(instance.requests);
  for (int i = 0; i < instance.size(); ++i) {
    out.set(i, algorithm.next(all.first(static_cast<std::size_t>(i) + 1), tape));
  }
  return out;
}

}  // namespace advicebench
