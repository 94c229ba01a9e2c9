#include "advicebench/reductions.hpp"

#include <algorithm>
#include <cmath>

#include "advicebench/errors.hpp"

namespace advicebench {

namespace {

int index_width(int n) { return bits_for_count(static_cast<std::uint64_t>(n) + 1); }

std::vector<int> ones_of(const BitString& x) {
  std::vector<int> out;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i]) out.push_back(i);
  }
  return out;
}

Request vertex(std::vector<int> neighbors, double weight) {
  return Request{VertexArrival{std::move(neighbors)}, weight};
}

void set_index(BitString& y, std::uint64_t one_based, bool bit) {
  if (one_based >= 1 && one_based <= static_cast<std::uint64_t>(y.size())) {
    y.set(static_cast<int>(one_based - 1), bit);
  }
}

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool at_most(double a, double b) {
  return a <= b || close(a, b);
}

}  // namespace

ReductionResult reduce_asg(const Instance& source, Problem target) {
  if (source.problem != Problem::kMinAsg) {
    throw ContractError("reductions start from a minASG instance");
  }
  source.validate();
  const int n = source.size();
  ReductionResult result;
  result.x = BitString(n);
  for (int i = 0; i < n; ++i) {
    result.x.set(i, std::get<AsgBit>(source.requests[i].payload).value);
  }
  const auto ones = ones_of(result.x);
  const int max = ones.empty() ? -1 : ones.back();
  const int w = index_width(n);

  Instance& t = result.transformed;
  t.problem = target;
  switch (target) {
    case Problem::kVertexCover: {
      // Edges (v_i, v_j) for x_i = 1 and i < j.
      for (int j = 0; j < n; ++j) {
        std::vector<int> nb;
        for (int i : ones) {
          if (i < j) nb.push_back(i);
        }
        t.requests.push_back(vertex(std::move(nb), source.requests[j].weight));
      }
      result.g_budget = w;
      break;
    }
    case Problem::kCycleFinding: {
      // Each vertex hangs off the latest earlier 1-vertex; the edge
      // (v_min, v_max) closes the 1-vertices into the only cycle.
      int last_one = -1;
      for (int i = 0; i < n; ++i) {
        std::vector<int> nb;
        if (last_one >= 0) nb.push_back(last_one);
        if (i == max && ones.size() >= 3) nb.push_back(ones.front());
        t.requests.push_back(vertex(std::move(nb), source.requests[i].weight));
        if (result.x[i]) last_one = i;
      }
      result.degenerate = ones.size() <= 2;
      result.g_budget = 1 + 2 * w;
      break;
    }
    case Problem::kDominatingSet: {
      // Star around v_max whose leaves are the 0-vertices; the other
      // 1-vertices are isolated and must dominate themselves.
      for (int i = 0; i < n; ++i) {
        std::vector<int> nb;
        if (max >= 0 && i == max) {
          for (int j = 0; j < i; ++j) {
            if (!result.x[j]) nb.push_back(j);
          }
        } else if (max >= 0 && i > max) {
          nb.push_back(max);
        }
        t.requests.push_back(vertex(std::move(nb), source.requests[i].weight));
      }
      result.g_budget = 2 + 2 * w;
      break;
    }
    case Problem::kSetCover: {
      t.universe_size = n;
      for (int i = 0; i < n; ++i) {
        Subset s;
        s.elements.push_back(i + 1);
        if (i == max) {
          for (int j = 0; j < n; ++j) {
            if (!result.x[j]) s.elements.push_back(j + 1);
          }
          std::sort(s.elements.begin(), s.elements.end());
        }
        t.requests.push_back(Request{std::move(s), source.requests[i].weight});
      }
      result.g_budget = 2 + 2 * w;
      break;
    }
    default:
      throw ContractError("no reduction from minASG to " +
                          std::string(to_string(target)));
  }
  return result;
}

void write_side_advice(const ReductionResult& result,
                       const BitString& target_output, AdviceTape& side) {
  const BitString& x = result.x;
  const int n = x.size();
  if (target_output.size() != n) {
    throw ContractError("target output length differs from the source");
  }
  const int w = index_width(n);
  const auto ones = ones_of(x);
  switch (result.transformed.problem) {
    case Problem::kVertexCover: {
      std::uint64_t idx = 0;
      for (int i : ones) {
        if (!target_output[i]) {
          idx = static_cast<std::uint64_t>(i) + 1;
          break;
        }
      }
      side.write_uint_fixed(idx, w);
      break;
    }
    case Problem::kCycleFinding: {
      side.write_bit(result.degenerate);
      if (result.degenerate) {
        for (std::size_t k = 0; k < 2; ++k) {
          side.write_uint_fixed(k < ones.size() ? ones[k] + 1 : 0, w);
        }
      }
      break;
    }
    case Problem::kDominatingSet:
    case Problem::kSetCover: {
      side.write_bit(ones.empty());
      if (ones.empty()) break;
      const int max = ones.back();
      side.write_bit(target_output[max]);
      if (target_output[max]) break;
      std::uint64_t zero_idx = 0;
      for (int i = 0; i < n; ++i) {
        if (!x[i] && target_output[i]) {
          zero_idx = static_cast<std::uint64_t>(i) + 1;
          break;
        }
      }
      side.write_uint_fixed(zero_idx, w);
      side.write_uint_fixed(static_cast<std::uint64_t>(max) + 1, w);
      break;
    }
    default:
      throw ContractError("unsupported reduction target");
  }
}

BitString back_map(const ReductionResult& result,
                   const BitString& target_output, AdviceTape& side) {
  const int n = result.transformed.size();
  const int w = index_width(n);
  BitString y = target_output;
  switch (result.transformed.problem) {
    case Problem::kVertexCover:
      set_index(y, side.read_uint_fixed(w), true);
      break;
    case Problem::kCycleFinding:
      if (side.read_bit()) {
        y = BitString(n);
        set_index(y, side.read_uint_fixed(w), true);
        set_index(y, side.read_uint_fixed(w), true);
      }
      break;
    case Problem::kDominatingSet:
    case Problem::kSetCover: {
      if (side.read_bit()) return BitString(n);
      if (side.read_bit()) break;
      const auto zero_idx = side.read_uint_fixed(w);
      const auto max_idx = side.read_uint_fixed(w);
      set_index(y, zero_idx, false);
      set_index(y, max_idx, true);
      break;
    }
    default:
      throw ContractError("unsupported reduction target");
  }
  return y;
}

ReductionVerdict verify_reduction(const Instance& source,
                                  const Outcome& target_run,
                                  const ReductionResult& result) {
  if (result.transformed.size() != source.size()) {
    throw ReductionError("reduction changed the sequence length");
  }
  if (!result.degenerate && !target_run.feasible) {
    throw ContractError("target run must be feasible");
  }
  ReductionVerdict v;
  AdviceTape side;
  write_side_advice(result, target_run.output, side);
  v.source_output = back_map(result, target_run.output, side);
  v.side_bits = side.bits_read();
  if (v.side_bits > static_cast<std::size_t>(result.g_budget)) {
    throw ReductionError("back map read more side advice than g(n)");
  }
  const Outcome alg1 = evaluate(source, v.source_output);
  if (!alg1.feasible) {
    throw ReductionError("back map produced an infeasible source output " +
                         v.source_output.str());
  }
  v.alg1 = alg1.score;
  v.alg2 = target_run.score;
  v.opt1 = brute_force_opt(source).score;
  if (result.degenerate) {
    v.passed = close(v.alg1, v.opt1);
    return v;
  }
  v.opt2 = brute_force_opt(result.transformed).score;
  v.passed = (at_most(v.alg1, v.alg2 + v.opt1) && at_most(v.opt2, v.opt1)) ||
             close(v.alg1, v.opt1);
  return v;
}

}  // namespace advicebench
