#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "balsp/graph.hpp"

namespace balsp {

// Strongly connected components, component ids numbered in topological order
// of the condensation: for every arc (u,v), comp[u] <= comp[v].
struct SccResult {
  int32_t count = 0;
  std::vector<int32_t> comp;
};

// Iterative Tarjan over an explicit arc list; costs are ignored.
SccResult strongly_connected(int32_t n, std::span<const Arc> arcs);
SccResult strongly_connected(int32_t n,
                             std::span<const std::pair<int32_t, int32_t>> arcs);

// Component node sets in topological order.
std::vector<std::vector<int32_t>> scc_components(const Graph& g);

bool is_strongly_connected(const Graph& g);

}  // namespace balsp
