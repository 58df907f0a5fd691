#pragma once

#include <vector>

#include "balsp/graph.hpp"

namespace balsp {

struct AugmentResult {
  Graph graph;                 // strongly connected superset of the input
  Wide big_cost = 0;           // M = (sum of input costs) + 1
  std::vector<Arc> added;      // arcs added, all of cost M
};

// Makes the graph strongly connected by wiring a sink-component node t0 to a
// node in every source component and a node in every sink component to a
// source-component node s0, all with cost M greater than the total input
// cost. A distance >= M between two input nodes certifies unreachability in
// the input graph.
AugmentResult make_strongly_connected(const Graph& g);

struct PositivizeResult {
  Graph graph;                     // zero-cost SCCs contracted, costs n*c^pi >= 1
  std::vector<int32_t> node_class; // input node -> output node
  Potential pot;                   // over input nodes, scale n_pow2
  Wide n_pow2 = 1;                 // smallest power of two >= surviving node count
};

// Contracts strongly connected components of the zero-cost subgraph, assigns
// potentials -i/n along a topological order of the contraction, and rescales
// costs by n so every output cost is a positive integer.
PositivizeResult positivize(const Graph& g);

}  // namespace balsp
