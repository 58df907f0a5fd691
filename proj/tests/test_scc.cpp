#include "balsp/scc.hpp"

#include <random>

#include "balsp/generate.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace balsp;
using testutil::graph;

TEST_CASE("scc basics") {
  SUBCASE("2-cycle is one component") {
    Graph g = graph(2, {{0, 1, 1}, {1, 0, 1}});
    CHECK(scc_components(g) == std::vector<std::vector<int32_t>>{{0, 1}});
  }
  SUBCASE("path components in topological order") {
    Graph g = graph(3, {{0, 1, 1}, {1, 2, 1}});
    CHECK(scc_components(g) ==
          std::vector<std::vector<int32_t>>{{0}, {1}, {2}});
  }
  SUBCASE("triangle plus pendant arc") {
    Graph g = graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 1}});
    CHECK(scc_components(g) ==
          std::vector<std::vector<int32_t>>{{0, 1, 2}, {3}});
  }
}

TEST_CASE("scc output is a topological order of the condensation") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 300; ++iter) {
    RandomGraphSpec spec;
    spec.n = 2 + int32_t(rng() % 20);
    spec.m = int32_t(rng() % (4 * spec.n));
    spec.strongly_connected = false;
    Graph g = random_graph(rng(), spec);
    SccResult sc = strongly_connected(g.node_count(), g.arcs());
    // Every node assigned, ids within range.
    for (int32_t v = 0; v < g.node_count(); ++v) {
      CHECK(sc.comp[v] >= 0);
      CHECK(sc.comp[v] < sc.count);
    }
    // Arc-by-arc topological property.
    for (const Arc& a : g.arcs()) CHECK(sc.comp[a.tail] <= sc.comp[a.head]);
    // Mutual reachability within components (checked by BFS closure).
    std::vector<std::vector<int32_t>> adj(g.node_count());
    for (const Arc& a : g.arcs()) adj[a.tail].push_back(a.head);
    auto reach = [&](int32_t s) {
      std::vector<uint8_t> seen(g.node_count(), 0);
      std::vector<int32_t> q{s};
      seen[s] = 1;
      while (!q.empty()) {
        int32_t v = q.back();
        q.pop_back();
        for (int32_t w : adj[v])
          if (!seen[w]) {
            seen[w] = 1;
            q.push_back(w);
          }
      }
      return seen;
    };
    for (int32_t u = 0; u < g.node_count(); ++u) {
      auto ru = reach(u);
      for (int32_t v = 0; v < g.node_count(); ++v) {
        if (u == v) continue;
        bool same = sc.comp[u] == sc.comp[v];
        bool mutual = ru[v] && reach(v)[u];
        CHECK(same == mutual);
      }
    }
  }
}
