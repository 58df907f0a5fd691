#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "balsp/graph.hpp"
#include "balsp/hierarchy.hpp"
#include "balsp/min_balance.hpp"
#include "balsp/sssp.hpp"

namespace balsp {

struct PipelineOptions {
  int32_t rho = 0;
  bool check_invariants = false;
  bool precheck_balanced = false;
  bool want_hierarchy = true;  // needs rho == 0
  GraphLimits limits;
};

// Preprocessing artifact shared by all queries: the input is augmented to
// strong connectivity, zero-cost components are contracted, costs are
// rescaled and balanced, and (at rho = 0) a component hierarchy is built
// over the final reduced graph.
struct Pipeline {
  Graph input;
  Graph augmented;
  Wide big_cost = 0;  // M: original-unit distances >= M mean unreachable
  bool arcs_added = false;

  std::vector<int32_t> node_class;  // input node -> reduced node
  Graph reduced;                    // strictly positive, 3-min-balanced costs
  std::vector<Wide> node_potential; // per reduced node
  Wide scale = 1;                   // reduced = scale*original + potential shift
  Wide n_pow2 = 1;

  bool has_hierarchy = false;
  ComponentHierarchy hierarchy;

  int64_t rough_iterations = 0;
  MinBalanceStats balance_stats;

  int32_t reduced_node(int32_t input_node) const {
    return node_class[input_node];
  }
  // Original-unit distance from a reduced-graph label (exact division).
  Wide to_original(Wide reduced_dist, int32_t src_red, int32_t dst_red) const;
  bool beyond_reach(Wide original_dist) const {
    return arcs_added && original_dist >= big_cost;
  }
};

Pipeline build_pipeline(const Graph& g, const PipelineOptions& opt = {});

// Distances from `source` (input node id) to every input node, in original
// cost units; kWideInf marks pairs with no path in the input graph.
std::vector<Wide> query_distances(const Pipeline& p, const SsspEngine& engine,
                                  int32_t source, const SsspOptions& opt = {},
                                  SsspStats* stats = nullptr);

// Runs one query per source and hands each finished row to the sink.
void all_pairs(const Pipeline& p,
               const std::function<void(int32_t, const std::vector<Wide>&)>& sink,
               const SsspOptions& opt = {});

// Dense all-pairs matrix; sources fan out across `threads` workers over the
// shared immutable artifacts (each query owns its state). Row order is
// independent of the thread count.
std::vector<std::vector<Wide>> all_pairs_matrix(const Pipeline& p,
                                                int32_t threads = 1,
                                                const SsspOptions& opt = {});

}  // namespace balsp
