#include "balsp/hierarchy.hpp"

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

struct Built {
  Graph reduced;
  ComponentHierarchy h;
};

Built run_pipeline(const Graph& g) {
  auto rb = rough_balance(g, {});
  Graph mid = with_costs(g, reduced_costs(g, rb.pot));
  MinBalanceOptions opt;
  auto mb = min_balance(mid, opt);
  Built out{with_costs(mid, reduced_costs(mid, mb.pot)),
            build_hierarchy(mb.trace, 0)};
  return out;
}

}  // namespace

TEST_CASE("build_hierarchy basics") {
  SUBCASE("2-cycle of cost 4 gives one root at level 4") {
    Graph g = graph(2, {{0, 1, 4}, {1, 0, 4}});
    MinBalanceOptions opt;
    auto mb = min_balance(g, opt);
    auto h = build_hierarchy(mb.trace, 0);
    CHECK(h.leaf_count == 2);
    CHECK(h.children.size() == 1);
    CHECK(h.a(h.root) == 4);
    CHECK(h.kids(h.root).size() == 2);
  }
  SUBCASE("single node graph is a lone leaf") {
    ContractionTrace t(1);
    auto h = build_hierarchy(t, 0);
    CHECK(h.leaf_count == 1);
    CHECK(h.root == 0);
    CHECK(h.children.empty());
  }
  SUBCASE("rho != 0 rejected") {
    ContractionTrace t(1);
    CHECK_THROWS_AS(build_hierarchy(t, 1), std::invalid_argument);
  }
  SUBCASE("two scales stack into two levels") {
    Graph g = graph(4, {{0, 1, 2}, {1, 0, 2}, {1, 2, 64}, {2, 1, 64},
                        {2, 3, 2}, {3, 2, 2}});
    auto built = run_pipeline(g);
    const auto& h = built.h;
    REQUIRE(h.children.size() >= 2);
    // Root level strictly dominates every internal child's level.
    for (int32_t c : h.kids(h.root))
      if (!h.is_leaf(c)) {
        CHECK(h.a(h.root) >= 2 * h.a(c));
        Wide ratio = h.a(h.root) / h.a(c);
        CHECK((ratio & (ratio - 1)) == 0);
      }
  }
}

TEST_CASE("compute_bounds formulas") {
  SUBCASE("root with two leaves at a=1") {
    ContractionTrace t(2);
    t.begin_step(1, 1);
    t.record_merge({0, 1});
    auto h = build_hierarchy(t, 0);
    CHECK(h.path_bound[0] == 3);
    CHECK(h.bucket_count[0] == 4);
  }
  SUBCASE("three leaves at a=2") {
    ContractionTrace t(3);
    t.begin_step(1, 2);
    t.record_merge({0, 1, 2});
    auto h = build_hierarchy(t, 0);
    CHECK(h.path_bound[0] == 12);
    CHECK(h.bucket_count[0] == 7);
  }
  SUBCASE("two-level recursion") {
    // w = {0,1} at a=1 (U=3), root = {w, 2} at a=2:
    // U(root) = 3*2*1 + 3 = 9, eta = 1 + ceil(9/2) = 6.
    ContractionTrace t(3);
    t.begin_step(1, 1);
    t.record_merge({0, 1});
    t.begin_step(2, 2);
    t.record_merge({3, 2});
    auto h = build_hierarchy(t, 0);
    REQUIRE(h.children.size() == 2);
    CHECK(h.upper_bound_of(h.root) == 9);
    CHECK(h.eta(h.root) == 6);
  }
}

TEST_CASE("hierarchy desc ranges partition the leaf order") {
  std::mt19937_64 rng(31337);
  for (int iter = 0; iter < 40; ++iter) {
    RandomGraphSpec spec;
    spec.n = 2 + int32_t(rng() % 40);
    spec.m = spec.n + int32_t(rng() % (3 * spec.n));
    spec.min_cost = 1;
    spec.max_cost = 1 + Wide(rng() % 100000);
    Graph g = random_graph(rng(), spec);
    auto built = run_pipeline(g);
    const auto& h = built.h;
    // Each vertex's range is exactly its leaves, contiguous in leaf order.
    for (int32_t off = 0; off < (int32_t)h.children.size(); ++off) {
      int32_t id = h.leaf_count + off;
      auto [lo, hi] = h.range(id);
      CHECK(lo < hi);
      int32_t count = 0;
      for (int32_t leaf = 0; leaf < h.leaf_count; ++leaf) {
        bool in_range = h.leaf_pos[leaf] >= lo && h.leaf_pos[leaf] < hi;
        bool is_desc = h.lca(leaf, id) == id;
        CHECK(in_range == is_desc);
        count += in_range;
      }
      CHECK(count == hi - lo);
      // Internal vertices have at least two children.
      CHECK(h.kids(id).size() >= 2);
    }
  }
}

TEST_CASE("validate_hierarchy on pipeline outputs") {
  std::mt19937_64 rng(97);
  for (int iter = 0; iter < 30; ++iter) {
    RandomGraphSpec spec;
    spec.n = 2 + int32_t(rng() % 32);
    spec.m = spec.n + int32_t(rng() % (4 * spec.n));
    spec.min_cost = 1;
    spec.max_cost = 1 + Wide(rng() % (uint64_t(1) << (2 + rng() % 24)));
    Graph g = random_graph(rng(), spec);
    auto built = run_pipeline(g);
    auto rep = validate_hierarchy(built.h, built.reduced);
    INFO(rep.witness);
    CHECK(rep.pass);
    CHECK(rep.eta_sum < 6 * Wide(g.node_count()));
  }
}

TEST_CASE("validate_hierarchy flags corrupted levels") {
  Graph g = graph(3, {{0, 1, 4}, {1, 2, 4}, {2, 0, 4}});
  auto built = run_pipeline(g);
  REQUIRE(built.h.children.size() == 1);
  built.h.level[0] *= 8;  // level no longer sandwiches the bottlenecks
  auto rep = validate_hierarchy(built.h, built.reduced);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.witness.empty());
}
