#pragma once

#include <cstdint>
#include <vector>

#include "balsp/graph.hpp"
#include "balsp/oracles.hpp"
#include "balsp/trace.hpp"

namespace balsp {

struct FindBalanceStats {
  int32_t max_depth = 0;
  std::vector<int64_t> arcs_per_depth;  // sum of subproblem arc counts
  int64_t scc_calls = 0;
};

// Divide-and-conquer balance values: beta(e) is the smallest threshold r
// such that the arcs of cost <= r contain a cycle through e. Splits at the
// smallest sorted-arc position whose threshold captures half the arcs
// inside strongly connected pieces, recursing into the pieces and into the
// contraction.
BalanceValues find_balance(const Graph& g, FindBalanceStats* stats = nullptr);

struct ThresholdStep {
  Wide r = 0;
  bool special = false;  // jumped to the next beta value
};

// r_1 = min beta; then r_{t+1} = 2n r_t while some beta lies in
// (r_t, 2n r_t], else jump to the next beta value; stops at max beta.
std::vector<ThresholdStep> threshold_sequence(std::span<const Wide> beta,
                                              Wide n_pow2);

struct RoughBalanceOptions {
  bool check_invariants = false;
};

struct RoughBalanceResult {
  Potential pot;           // scale 3*n_pow2^2
  Wide n_pow2 = 1;
  ContractionTrace trace;  // merge thresholds follow the r_t sequence
  int64_t iterations = 0;
};

// Potential making the graph 7n^2-min-balanced (n rounded to a power of
// two). Requires strictly positive costs and strong connectivity.
RoughBalanceResult rough_balance(const Graph& g,
                                 const RoughBalanceOptions& opt = {});

}  // namespace balsp
