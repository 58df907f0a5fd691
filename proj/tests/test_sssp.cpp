#include "balsp/sssp.hpp"

#include <random>

#include "balsp/balance.hpp"
#include "balsp/generate.hpp"
#include "balsp/min_balance.hpp"
#include "balsp/oracles.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace balsp;
using testutil::graph;

namespace {

struct Prepared {
  Graph reduced;
  ComponentHierarchy h;
};

Prepared prepare(const Graph& g) {
  auto rb = rough_balance(g, {});
  Graph mid = with_costs(g, reduced_costs(g, rb.pot));
  auto mb = min_balance(mid, {});
  return {with_costs(mid, reduced_costs(mid, mb.pot)),
          build_hierarchy(mb.trace, 0)};
}

}  // namespace

TEST_CASE("sssp on the worked 4-node example") {
  Graph g = graph(4, {{0, 1, 2}, {1, 2, 1}, {2, 0, 1}, {0, 2, 5}, {2, 3, 2},
                      {3, 0, 3}});
  auto prep = prepare(g);
  SsspEngine engine(prep.reduced, prep.h);
  SsspOptions opt;
  opt.check_invariants = true;
  auto b = bottleneck_matrix(prep.reduced);
  opt.bottleneck_audit = &b;
  auto res = engine.run(0, opt);
  // Compare through the potential shift against plain distances.
  auto want = dijkstra(prep.reduced, 0);
  CHECK(res.dist == want);
  // Spot-check the known original distances 0,2,3,5 via telescoping: the
  // reduced and original labels rank paths identically.
  auto dorig = dijkstra(g, 0);
  CHECK(dorig == std::vector<Wide>{0, 2, 3, 5});
}

TEST_CASE("sssp single node") {
  ContractionTrace t(1);
  auto h = build_hierarchy(t, 0);
  Graph g(1, {});
  SsspEngine engine(g, h);
  auto res = engine.run(0);
  CHECK(res.dist == std::vector<Wide>{0});
}

TEST_CASE("sssp structured stress shapes") {
  std::vector<Graph> shapes;
  {
    // Chain of 2-cycles at doubling scales: one hierarchy vertex per scale.
    std::vector<Arc> arcs;
    int32_t k = 24;
    for (int32_t i = 0; i < k; ++i) {
      Wide c = Wide(1) << (i % 36);
      arcs.push_back({i, i + 1, c});
      arcs.push_back({i + 1, i, c});
    }
    shapes.emplace_back(k + 1, std::move(arcs));
  }
  {
    // Star: flat hierarchy, the root owns every leaf.
    std::vector<Arc> arcs;
    for (int32_t i = 1; i < 40; ++i) {
      arcs.push_back({0, i, 1});
      arcs.push_back({i, 0, 1});
    }
    shapes.emplace_back(40, std::move(arcs));
  }
  {
    // Directed torus with a couple of expensive chords.
    std::vector<Arc> arcs;
    int32_t w = 6;
    for (int32_t r = 0; r < w; ++r)
      for (int32_t col = 0; col < w; ++col) {
        int32_t v = r * w + col;
        arcs.push_back({v, r * w + (col + 1) % w, 3});
        arcs.push_back({v, ((r + 1) % w) * w + col, 5});
      }
    arcs.push_back({0, 3 * w + 3, 1000});
    arcs.push_back({3 * w + 3, 0, 1});
    shapes.emplace_back(w * w, std::move(arcs));
  }
  {
    // Geometric cost spread.
    std::mt19937_64 rng(515);
    RandomGraphSpec spec;
    spec.n = 48;
    spec.m = 160;
    spec.min_cost = 1;
    spec.max_cost = 1;
    Graph base = random_graph(3, spec);
    std::vector<Wide> costs(base.arc_count());
    for (auto& c : costs) c = Wide(1) << (rng() % 30);
    shapes.push_back(with_costs(base, costs));
  }
  for (const Graph& g : shapes) {
    auto prep = prepare(g);
    SsspEngine engine(prep.reduced, prep.h);
    SsspOptions opt;
    opt.check_invariants = true;
    auto b = bottleneck_matrix(prep.reduced);
    opt.bottleneck_audit = &b;
    for (int32_t s = 0; s < g.node_count(); ++s) {
      auto res = engine.run(s, opt);
      CHECK(res.dist == dijkstra(prep.reduced, s));
    }
  }
}

TEST_CASE("sssp matches the label-setting oracle on random pipelines") {
  std::mt19937_64 rng(20240);
  for (int iter = 0; iter < 150; ++iter) {
    RandomGraphSpec spec;
    spec.n = 2 + int32_t(rng() % 127);
    spec.m = spec.n + int32_t(rng() % (4 * spec.n));
    spec.min_cost = 1;
    spec.max_cost = 1 + Wide(rng() % (uint64_t(1) << (2 + rng() % 24)));
    Graph g = random_graph(rng(), spec);
    auto prep = prepare(g);
    SsspEngine engine(prep.reduced, prep.h);
    SsspOptions opt;
    opt.check_invariants = spec.n <= 48;
    std::vector<std::vector<Wide>> b;
    if (spec.n <= 32) {
      b = bottleneck_matrix(prep.reduced);
      opt.bottleneck_audit = &b;
    }
    int32_t s = int32_t(rng() % spec.n);
    auto res = engine.run(s, opt);
    auto want = dijkstra(prep.reduced, s);
    CHECK(res.dist == want);
    // Predecessors form a tight tree.
    for (int32_t v = 0; v < spec.n; ++v) {
      if (v == s) {
        CHECK(res.pred[v] == -1);
        continue;
      }
      REQUIRE(res.pred[v] >= 0);
      bool found = false;
      for (const Arc& a : prep.reduced.out(res.pred[v]))
        if (a.head == v && res.dist[res.pred[v]] + a.cost == res.dist[v])
          found = true;
      CHECK(found);
    }
    // Work bounds: every relaxation sweep touches each arc once per
    // permanent node.
    CHECK(res.stats.relaxations <= prep.reduced.arc_count() + spec.n);
  }
}
