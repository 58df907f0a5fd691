#include "balsp/generate.hpp"

#include <algorithm>
#include <numeric>

namespace balsp {

Graph random_graph(uint64_t seed, const RandomGraphSpec& spec) {
  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;
  int64_t target = std::min<int64_t>(spec.m, int64_t(spec.n) * (spec.n - 1));
  arcs.reserve(spec.m + spec.n);
  auto cost = [&] { return rand_cost(rng, spec.min_cost, spec.max_cost); };
  if (spec.strongly_connected && spec.n > 1) {
    std::vector<int32_t> perm(spec.n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int32_t i = spec.n - 1; i > 0; --i)
      std::swap(perm[i], perm[rand_range(rng, 0, i)]);
    for (int32_t i = 0; i < spec.n; ++i)
      arcs.push_back({perm[i], perm[(i + 1) % spec.n], cost()});
  }
  while (static_cast<int64_t>(arcs.size()) < target) {
    int32_t u = static_cast<int32_t>(rand_range(rng, 0, spec.n - 1));
    int32_t v = static_cast<int32_t>(rand_range(rng, 0, spec.n - 1));
    if (u == v) continue;
    arcs.push_back({u, v, cost()});
  }
  return Graph(spec.n, std::move(arcs));
}

}  // namespace balsp
