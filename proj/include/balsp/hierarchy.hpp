#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "balsp/graph.hpp"
#include "balsp/trace.hpp"

namespace balsp {

// Rooted tree over the contraction history: leaves are graph nodes, every
// internal vertex is one contraction event carrying its threshold a(v) (a
// power of two). Leaves are ordered depth-first so each vertex's descendant
// set is a contiguous range.
struct ComponentHierarchy {
  int32_t leaf_count = 0;
  int32_t root = 0;  // equals the single leaf when leaf_count == 1
  std::vector<int32_t> parent;                 // per id; -1 at root
  std::vector<int32_t> depth;                  // per id; 0 at root
  std::vector<std::vector<int32_t>> children;  // per internal offset
  std::vector<Wide> level;                     // a(v), per internal offset
  std::vector<Wide> path_bound;                // U(v)
  std::vector<Wide> bucket_count;              // eta(v)
  std::vector<int32_t> leaf_order;             // leaves, depth-first
  std::vector<int32_t> leaf_pos;               // node -> order index
  std::vector<std::pair<int32_t, int32_t>> desc_range;  // per internal offset

  int32_t id_count() const {
    return leaf_count + static_cast<int32_t>(children.size());
  }
  bool is_leaf(int32_t id) const { return id < leaf_count; }
  Wide a(int32_t id) const { return level[id - leaf_count]; }
  Wide upper_bound_of(int32_t id) const { return path_bound[id - leaf_count]; }
  Wide eta(int32_t id) const { return bucket_count[id - leaf_count]; }
  const std::vector<int32_t>& kids(int32_t id) const {
    return children[id - leaf_count];
  }
  std::pair<int32_t, int32_t> range(int32_t id) const {
    if (is_leaf(id)) return {leaf_pos[id], leaf_pos[id] + 1};
    return desc_range[id - leaf_count];
  }
  // Ancestor walk; test-side only, the query engine never needs it.
  int32_t lca(int32_t u, int32_t v) const;
  Wide eta_sum() const;
};

// Requires a complete trace from the threshold-doubling run (rho must be 0
// so levels are powers of two). Fills structure and the U/eta bounds.
ComponentHierarchy build_hierarchy(const ContractionTrace& trace, int32_t rho);

// Recomputes path_bound (U) and bucket_count (eta) bottom-up:
//   U(v) = 3 a(v) (|children(v)|-1) + sum of U over internal children,
//   eta(v) = 1 + ceil(U(v)/a(v)).
void compute_bounds(ComponentHierarchy& h);

struct HierarchyReport {
  bool pass = true;
  std::string witness;
  int64_t pairs_checked = 0;
  Wide eta_sum = 0;
};

// Checks, over sampled leaf pairs (exhaustive when n <= 64):
//   a(lca) <= b(i,j) <= 3 a(lca) with a bottleneck path inside desc(lca),
//   a shortest i-j path inside desc(lca) of length <= U(lca),
// plus the global bucket budget sum(eta) < 6n.
HierarchyReport validate_hierarchy(const ComponentHierarchy& h, const Graph& g,
                                   int64_t sample_pairs = 2000,
                                   uint64_t seed = 1);

}  // namespace balsp
