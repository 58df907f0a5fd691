#pragma once

#include <cstdint>
#include <random>

#include "balsp/graph.hpp"

namespace balsp {

// Deterministic helpers for seeded corpora. All draws go through explicit
// modulo reduction so outputs are identical across standard libraries.
inline uint64_t rand_u64(std::mt19937_64& rng) { return rng(); }
inline int64_t rand_range(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(rng() % static_cast<uint64_t>(hi - lo + 1));
}
inline Wide rand_cost(std::mt19937_64& rng, Wide lo, Wide hi) {
  return lo + Wide(rng() % static_cast<uint64_t>(hi - lo + 1));
}

struct RandomGraphSpec {
  int32_t n = 8;
  int32_t m = 16;          // target arc count (post-dedup may be smaller)
  Wide max_cost = 1000;
  Wide min_cost = 0;
  bool strongly_connected = true;  // threads a random covering cycle
};

Graph random_graph(uint64_t seed, const RandomGraphSpec& spec);

// All labeled loopless digraphs on n nodes, via arc-subset bitmasks over the
// n*(n-1) ordered pairs. cost_of(k) assigns the cost of the k-th present arc.
template <class CostFn, class Visit>
void enumerate_digraphs(int32_t n, CostFn cost_of, Visit visit) {
  std::vector<std::pair<int32_t, int32_t>> pairs;
  for (int32_t u = 0; u < n; ++u)
    for (int32_t v = 0; v < n; ++v)
      if (u != v) pairs.emplace_back(u, v);
  uint64_t total = uint64_t(1) << pairs.size();
  for (uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Arc> arcs;
    int32_t k = 0;
    for (size_t b = 0; b < pairs.size(); ++b)
      if ((mask >> b) & 1)
        arcs.push_back({pairs[b].first, pairs[b].second, cost_of(k++)});
    visit(Graph(n, std::move(arcs)));
  }
}

}  // namespace balsp
