#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "advicebench/advice_tape.hpp"
#include "advicebench/bitstring.hpp"

namespace advicebench {

// Largest instance brute_force_opt will enumerate (2^20 outputs).
inline constexpr int kMaxBruteForceRequests = 20;

enum class Problem {
  kMinAsg,
  kVertexCover,
  kDominatingSet,
  kCycleFinding,
  kSetCover,
  kIndependentSet,
  kClique,
  kMatching,
  kDisjointPath,
};

bool is_minimization(Problem problem);
std::string_view to_string(Problem problem);
Problem parse_problem(std::string_view name);

// Hidden answer x_i of a string-guessing round. Online algorithms only look
// at the values of strictly earlier rounds (known history).
struct AsgBit {
  bool value = false;
};

// Vertex arrival: the new vertex together with its edges to earlier
// vertices, given as 0-based request indices.
struct VertexArrival {
  std::vector<int> earlier_neighbors;
};

// Edge arrival between two named vertices.
struct Edge {
  int u = 0;
  int v = 0;
};

// Subpath <v_start, ..., v_end> of the known path v_1..v_path_length; it uses
// the edges (v_start, v_start+1) .. (v_end-1, v_end).
struct Subpath {
  int start = 1;
  int end = 2;
};

// Subset of the universe {1..universe_size}.
struct Subset {
  std::vector<int> elements;
};

using Payload = std::variant<AsgBit, VertexArrival, Edge, Subpath, Subset>;

struct Request {
  Payload payload;
  double weight = 1.0;
};

struct Instance {
  Problem problem = Problem::kMinAsg;
  std::vector<Request> requests;
  int universe_size = 0;  // SetCover only
  int path_length = 0;    // DisjointPath only

  int size() const { return static_cast<int>(requests.size()); }
  // Checks payload kinds, positive weights and structural bounds.
  void validate() const;
  std::vector<double> weights() const;
};

// Output bits follow the AOC convention: for minimization problems y_i = 1
// accepts request i, for maximization problems y_i = 0 accepts it.
struct Outcome {
  BitString output;
  bool feasible = false;
  // Cost (min) or profit (max); +inf / -inf when infeasible.
  double score = 0.0;
};

bool check_feasible(const Instance& instance, const BitString& output);
Outcome evaluate(const Instance& instance, const BitString& output);
// Same as evaluate with every weight treated as 1: ones(y) for minimization
// and zeros(y) for maximization.
Outcome evaluate_unweighted(const Instance& instance, const BitString& output);

// Enumerates all 2^n outputs; ties go to the lexicographically smallest.
Outcome brute_force_opt(const Instance& instance);

// Copy of the instance with every weight set to 1.
Instance unweighted(const Instance& instance);
// Sub-instance formed by the given request indices (ascending). Vertex
// arrivals are re-indexed and edges to dropped vertices removed.
Instance restrict_to(const Instance& instance, std::span<const int> indices);

// An online algorithm with advice. `seen` holds r_1..r_i; the call returns y_i.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  virtual bool next(std::span<const Request> seen, AdviceTape& tape) = 0;
};

// An oracle/algorithm pair. The oracle sees the whole instance and an
// optimal output for it; the algorithm only sees the requests so far.
struct AdviceScheme {
  std::string name;
  std::function<void(const Instance&, const BitString& optimal_output,
                     AdviceTape&)>
      oracle;
  std::function<std::unique_ptr<OnlineAlgorithm>()> make_algorithm;
};

// Feeds requests one at a time to `algorithm`.
BitString serve(const Instance& instance, OnlineAlgorithm& algorithm,
                AdviceTape& tape);

}  // namespace advicebench
