#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "balsp/wide.hpp"

namespace balsp {

struct Arc {
  int32_t tail = 0;
  int32_t head = 0;
  Wide cost = 0;
};

struct GraphLimits {
  int32_t max_nodes = 1 << 20;
  Wide max_cost = Wide(1) << 40;
};

// Immutable directed graph with nonnegative integer arc costs, stored as an
// arc array sorted by (tail, head) plus an out-adjacency index. Loopless and
// simple: parallel arcs collapse to the cheapest representative.
class Graph {
 public:
  Graph() = default;
  // Validates, sorts, and deduplicates. Throws std::invalid_argument on
  // loops, negative costs, or out-of-range endpoints. `dropped` (optional)
  // receives the number of parallel arcs removed.
  Graph(int32_t node_count, std::vector<Arc> arcs, int64_t* dropped = nullptr);

  int32_t node_count() const { return n_; }
  int32_t arc_count() const { return static_cast<int32_t>(arcs_.size()); }
  const Arc& arc(int32_t e) const { return arcs_[e]; }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const Arc> out(int32_t v) const {
    return {arcs_.data() + first_[v], arcs_.data() + first_[v + 1]};
  }
  // Arc ids of v's outgoing arcs form the contiguous range [lo, hi).
  std::pair<int32_t, int32_t> out_range(int32_t v) const {
    return {first_[v], first_[v + 1]};
  }

  Wide cost_sum() const;
  Wide max_cost() const;  // 0 on an arcless graph
  Wide min_cost() const;  // kWideInf on an arcless graph

 private:
  int32_t n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<int32_t> first_;
};

struct Partition {
  std::vector<int32_t> cls;  // node -> class id, contiguous in [0, count)
  int32_t count = 0;
};

// Renumbers arbitrary class labels so ids are contiguous and ordered by each
// class's smallest member.
Partition partition_from_classes(const std::vector<int32_t>& raw);

// Contracts every class of `p` to a single node (node id = class id). Arcs
// inside a class are dropped; parallel arcs keep the minimum cost.
// `arc_image`, if given, maps each input arc id to its output arc id, or -1
// for deleted in-class arcs.
Graph contract(const Graph& g, const Partition& p,
               std::vector<int32_t>* arc_image = nullptr);

// Per-node potentials stored as integer numerators over a common positive
// scale. The induced reduced cost of arc (u,v) is
//   scale*cost(u,v) + values[u] - values[v].
struct Potential {
  std::vector<Wide> values;
  Wide scale = 1;
};

Wide reduced_cost(const Graph& g, const Potential& pi, int32_t arc_id);
std::vector<Wide> reduced_costs(const Graph& g, const Potential& pi);

// Rebuilds the graph with the given costs (same structure).
Graph with_costs(const Graph& g, std::span<const Wide> costs);

}  // namespace balsp
