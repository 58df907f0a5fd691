#include "balsp/min_balance.hpp"

#include <random>

#include "balsp/balance.hpp"
#include "balsp/generate.hpp"
#include "balsp/oracles.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace balsp;
using testutil::graph;

namespace {

Graph balanced_input(const Graph& g) {
  RoughBalanceOptions opt;
  auto rb = rough_balance(g, opt);
  return with_costs(g, reduced_costs(g, rb.pot));
}

}  // namespace

TEST_CASE("simple_min_balance worked examples") {
  MinBalanceOptions opt;
  opt.check_invariants = true;
  SUBCASE("uniform cycle contracts in one round") {
    Graph g = graph(3, {{0, 1, 4}, {1, 2, 4}, {2, 0, 4}});
    auto res = simple_min_balance(g, opt);
    CHECK(res.stats.iterations == 1);
    Graph reduced = with_costs(g, reduced_costs(g, res.pot));
    CHECK(balance_check(reduced, 3).pass);
  }
  SUBCASE("triangle (4,1,2) becomes 3-balanced") {
    Graph g = testutil::triangle_412();
    CHECK_FALSE(balance_check(g, 3).pass);
    auto res = simple_min_balance(g, opt);
    Graph reduced = with_costs(g, reduced_costs(g, res.pot));
    CHECK(balance_check(reduced, 3).pass);
  }
  SUBCASE("random graphs pass at rho 0 and 1") {
    std::mt19937_64 rng(64);
    for (int iter = 0; iter < 40; ++iter) {
      RandomGraphSpec spec;
      spec.n = 2 + int32_t(rng() % 63);
      spec.m = spec.n + int32_t(rng() % (3 * spec.n));
      spec.min_cost = 1;
      spec.max_cost = 1 + Wide(rng() % 10000);
      Graph g = random_graph(rng(), spec);
      for (int32_t rho : {0, 1}) {
        MinBalanceOptions o;
        o.rho = rho;
        o.check_invariants = true;
        auto res = simple_min_balance(g, o);
        Graph reduced = with_costs(g, reduced_costs(g, res.pot));
        auto [num, den] = xi_for_rho(rho);
        CHECK(balance_check(reduced, num, den).pass);
      }
    }
  }
}

TEST_CASE("min_balance worked examples") {
  MinBalanceOptions opt;
  opt.check_invariants = true;
  SUBCASE("uniform cycle: single step, trace threshold is the pow2 floor") {
    Graph g = graph(4, {{0, 1, 5}, {1, 2, 5}, {2, 3, 5}, {3, 0, 5}});
    auto res = min_balance(g, opt);
    REQUIRE(res.trace.steps().size() == 1);
    CHECK(res.trace.steps()[0].threshold == 4);  // floor_pow2(5)
    CHECK(res.trace.steps()[0].merges.size() == 1);
  }
  SUBCASE("triangle through the rough/balance pipeline") {
    Graph g = balanced_input(testutil::triangle_412());
    MinBalanceOptions o;
    o.check_invariants = true;
    o.precheck_balanced = true;
    auto res = min_balance(g, o);
    Graph reduced = with_costs(g, reduced_costs(g, res.pot));
    CHECK(balance_check(reduced, 3).pass);
  }
  SUBCASE("wide cost spread exercises the threshold jump") {
    // Two 2-cycles joined, one at cost ~1, one at cost ~2^30.
    Graph g0 = graph(4, {{0, 1, 1},
                         {1, 0, 2},
                         {1, 2, Wide(1) << 30},
                         {2, 1, (Wide(1) << 30) + 7},
                         {2, 3, Wide(1) << 30},
                         {3, 2, (Wide(1) << 30) + 3}});
    Graph g = balanced_input(g0);
    MinBalanceOptions o;
    o.check_invariants = true;
    o.precheck_balanced = true;
    auto res = min_balance(g, o);
    Graph reduced = with_costs(g, reduced_costs(g, res.pot));
    CHECK(balance_check(reduced, 3).pass);
    // Far fewer iterations than the naive doubling range would need, and
    // every arc stays active only for a bounded window.
    Wide range_log = msb_index(g.max_cost() / g.min_cost()) + 1;
    CHECK(res.stats.iterations < range_log);
    Wide n4 = res.n_pow2 * res.n_pow2 * res.n_pow2 * res.n_pow2;
    int64_t span_bound = (msb_index(14 * n4) + 2);  // rho = 0
    CHECK(res.stats.max_active_span <= span_bound);
  }
}

TEST_CASE("min_balance sharper targets hold at rho 2 and 3") {
  std::mt19937_64 rng(2718);
  for (int iter = 0; iter < 12; ++iter) {
    RandomGraphSpec spec;
    spec.n = 2 + int32_t(rng() % 24);
    spec.m = spec.n + int32_t(rng() % (3 * spec.n));
    spec.min_cost = 1;
    spec.max_cost = 1 + Wide(rng() % 100000);
    Graph g0 = random_graph(rng(), spec);
    Graph g = balanced_input(g0);
    for (int32_t rho : {2, 3}) {
      MinBalanceOptions o;
      o.rho = rho;
      o.check_invariants = true;
      auto res = min_balance(g, o);
      auto [num, den] = xi_for_rho(rho);
      Graph reduced = with_costs(g, reduced_costs(g, res.pot));
      auto rep = balance_check(reduced, num, den);
      INFO(rep.witness);
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("min_balance near the cost ceiling") {
  // Costs close to 2^40 push every intermediate through the wide range.
  std::mt19937_64 rng(41);
  RandomGraphSpec spec;
  spec.n = 40;
  spec.m = 160;
  spec.min_cost = (Wide(1) << 40) - 1000;
  spec.max_cost = Wide(1) << 40;
  Graph g0 = random_graph(7, spec);
  Graph g = balanced_input(g0);
  MinBalanceOptions o;
  o.check_invariants = true;
  auto res = min_balance(g, o);
  Graph reduced = with_costs(g, reduced_costs(g, res.pot));
  CHECK(balance_check(reduced, 3).pass);
}

TEST_CASE("min_balance randomized pipeline contract") {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 60; ++iter) {
    RandomGraphSpec spec;
    spec.n = 2 + int32_t(rng() % 63);
    spec.m = spec.n + int32_t(rng() % (4 * spec.n));
    spec.min_cost = 1;
    spec.max_cost = 1 + Wide(rng() % (uint64_t(1) << (1 + rng() % 28)));
    Graph g0 = random_graph(rng(), spec);
    Graph g = balanced_input(g0);
    for (int32_t rho : {0, 1}) {
      MinBalanceOptions o;
      o.rho = rho;
      o.check_invariants = true;
      o.precheck_balanced = g.arc_count() <= 400;  // keep the suite quick
      auto res = min_balance(g, o);
      auto [num, den] = xi_for_rho(rho);
      Graph reduced = with_costs(g, reduced_costs(g, res.pot));
      CHECK(balance_check(reduced, num, den).pass);
      // The composed trace reproduces the potential.
      auto replay = compose_potential(res.trace);
      for (int32_t v = 0; v < g.node_count(); ++v)
        CHECK(replay[v] == res.pot.values[v]);
      if (rho == 0) CHECK(res.trace.complete());
      // Frozen reduced costs: each merged arc keeps the cost it had when
      // its endpoints were contracted (reduced under the final potential).
      auto rc = reduced_costs(g, res.pot);
      for (int32_t e = 0; e < g.arc_count(); ++e) CHECK(rc[e] >= den);
    }
  }
}
