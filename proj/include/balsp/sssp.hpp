#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "balsp/graph.hpp"
#include "balsp/hierarchy.hpp"

namespace balsp {

struct SsspStats {
  int64_t main_calls = 0;
  int64_t picked_nodes = 0;     // bucket held a node: one per permanent node
  int64_t descended = 0;        // bucket held a vertex: current vertex moved down
  int64_t emptied = 0;          // bucket exhausted: label advanced
  int64_t relaxations = 0;
  int64_t improvements = 0;
  int64_t activations = 0;
  int64_t bucket_moves = 0;
  int64_t sfm_ops = 0;
};

struct SsspOptions {
  bool check_invariants = false;
  // When set (small graphs), audited at every permanent-node insertion:
  // D(j) <= D(i) + b(i,j) for every temporary i with a finite label.
  const std::vector<std::vector<Wide>>* bottleneck_audit = nullptr;
};

struct SsspResult {
  std::vector<Wide> dist;    // exact distances in the graph's cost units
  std::vector<int32_t> pred; // -1 at the source
  SsspStats stats;
};

// Bucketed label-setting over a component hierarchy with parameter 2. The
// graph must be the 3-min-balanced reduced graph the hierarchy was built
// for; every query is independent and the shared structures stay untouched.
class SsspEngine {
 public:
  SsspEngine(const Graph& g, const ComponentHierarchy& h);
  SsspResult run(int32_t source, const SsspOptions& opt = {}) const;

 private:
  const Graph& g_;
  const ComponentHierarchy& h_;
};

}  // namespace balsp
