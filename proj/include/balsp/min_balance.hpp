#pragma once

#include <cstdint>
#include <vector>

#include "balsp/graph.hpp"
#include "balsp/trace.hpp"

namespace balsp {

struct MinBalanceOptions {
  int32_t rho = 0;  // lambda = 1 + 1/2^rho, xi = 1 + 1/2^(rho-1)
  bool check_invariants = false;
  // Sampled gate on the 7n^2-min-balancedness of the input: full check for
  // m <= 2000, a 1% sample above.
  bool precheck_balanced = false;
};

struct MinBalanceStats {
  int64_t iterations = 0;
  int64_t idle_iterations = 0;       // no active arcs, threshold only moves
  int64_t small_cycles_calls = 0;
  int64_t sum_active = 0;            // sum of |F_t| over iterations
  int64_t max_active_span = 0;       // max iterations any arc stayed active
  std::vector<Wide> thresholds;      // L_t trajectory
};

struct MinBalanceResult {
  // Relative to the *input* costs: reduced cost = scale*c + pot_u - pot_v
  // with scale = 2^rho.
  Potential pot;
  ContractionTrace trace;  // merge thresholds are the L_t values (prescaled units)
  MinBalanceStats stats;
  Wide n_pow2 = 1;
};

// Strongly polynomial min-balancing: sorted-arc activation windows, jumping
// thresholds at 2^rho boundaries, and incremental reduced-cost queries over
// the contraction. Input should be 7n^2-min-balanced (see precheck option);
// output reduced costs pass the balance check at xi = 1 + 1/2^(rho-1).
MinBalanceResult min_balance(const Graph& g, const MinBalanceOptions& opt = {});

// Weakly polynomial variant: every live arc participates in every
// iteration and the threshold never jumps. Same output contract.
MinBalanceResult simple_min_balance(const Graph& g,
                                    const MinBalanceOptions& opt = {});

// xi as a fraction: 1 + 1/2^(rho-1) = (2^rho + 2) / 2^rho.
inline std::pair<Wide, Wide> xi_for_rho(int32_t rho) {
  return {(Wide(1) << rho) + 2, Wide(1) << rho};
}

}  // namespace balsp
