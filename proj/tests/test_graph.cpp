#include "balsp/graph.hpp"

#include <random>

#include "balsp/generate.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace balsp;
using testutil::graph;

TEST_CASE("graph validation and dedup") {
  CHECK_THROWS_AS(graph(2, {{0, 0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(graph(2, {{0, 2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(graph(2, {{0, 1, -1}}), std::invalid_argument);
  int64_t dropped = 0;
  Graph g(2, {{0, 1, 5}, {0, 1, 4}, {1, 0, 3}}, &dropped);
  CHECK(dropped == 1);
  CHECK(g.arc_count() == 2);
  CHECK(g.out(0).size() == 1);
  CHECK(g.out(0)[0].cost == 4);
}

TEST_CASE("contract: identity partition is isomorphic") {
  Graph g = testutil::triangle_412();
  Partition p = partition_from_classes({0, 1, 2});
  Graph h = contract(g, p);
  CHECK(h.node_count() == 3);
  CHECK(h.arc_count() == 3);
  for (int e = 0; e < 3; ++e) CHECK(h.arc(e).cost == g.arc(e).cost);
}

TEST_CASE("contract: triangle with merged pair") {
  // 1->2 (4), 2->3 (1), 3->1 (2); contracting {2,3} keeps z->1 (2), 1->z (4).
  Graph g = testutil::triangle_412();
  Partition p = partition_from_classes({0, 1, 1});
  std::vector<int32_t> image;
  Graph h = contract(g, p, &image);
  CHECK(h.node_count() == 2);
  CHECK(h.arc_count() == 2);
  CHECK(h.arc(image[0]).cost == 4);  // 1->z
  CHECK(image[1] == -1);             // inside the class
  CHECK(h.arc(image[2]).cost == 2);  // z->1
}

TEST_CASE("contract: parallel result keeps minimum") {
  Graph g = graph(3, {{0, 1, 4}, {0, 2, 7}, {1, 0, 1}});
  Partition p = partition_from_classes({0, 1, 1});
  Graph h = contract(g, p);
  CHECK(h.arc_count() == 2);
  CHECK(h.out(0)[0].cost == 4);
}

TEST_CASE("contract preserves pairwise minimum costs") {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 200; ++iter) {
    RandomGraphSpec spec;
    spec.n = 2 + int32_t(rng() % 9);
    spec.m = spec.n + int32_t(rng() % (3 * spec.n));
    spec.max_cost = 50;
    spec.strongly_connected = false;
    Graph g = random_graph(rng(), spec);
    int32_t k = 1 + int32_t(rng() % spec.n);
    std::vector<int32_t> raw(spec.n);
    for (auto& c : raw) c = int32_t(rng() % k);
    Partition p = partition_from_classes(raw);
    Graph h = contract(g, p);
    // Minimum cost between every ordered class pair must be preserved.
    std::vector<std::vector<Wide>> want(p.count, std::vector<Wide>(p.count, kWideInf));
    for (const Arc& a : g.arcs()) {
      int ct = p.cls[a.tail], ch = p.cls[a.head];
      if (ct != ch) want[ct][ch] = std::min(want[ct][ch], a.cost);
    }
    std::vector<std::vector<Wide>> got(p.count, std::vector<Wide>(p.count, kWideInf));
    for (const Arc& a : h.arcs()) got[a.tail][a.head] = a.cost;
    CHECK(want == got);
  }
}

TEST_CASE("partition_from_classes orders by smallest member") {
  Partition p = partition_from_classes({5, 5, 2, 2, 9});
  CHECK(p.count == 3);
  CHECK(p.cls == std::vector<int32_t>{0, 0, 1, 1, 2});
}

TEST_CASE("reduced cost identities") {
  Graph g = graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 8}});
  SUBCASE("zero potential scales cost") {
    Potential pi{{0, 0, 0, 0}, 3};
    CHECK(reduced_cost(g, pi, 0) == 3);
    CHECK(reduced_cost(g, pi, 3) == 24);
  }
  SUBCASE("four-cycle balancing illustration") {
    // pi(v_i) = -2i gives reduced costs (3,3,3,2).
    Potential pi{{-2, -4, -6, -8}, 1};
    auto rc = reduced_costs(g, pi);
    CHECK(rc == std::vector<Wide>{3, 3, 3, 2});
  }
  SUBCASE("cycle sums telescope") {
    std::mt19937_64 rng(3);
    Potential pi{{0, 0, 0, 0}, 5};
    for (auto& v : pi.values) v = Wide(rng() % 1000) - 500;
    Wide plain = 0, reduced = 0;
    for (int e = 0; e < g.arc_count(); ++e) {
      plain += g.arc(e).cost;
      reduced += reduced_cost(g, pi, e);
    }
    CHECK(reduced == pi.scale * plain);
  }
}
