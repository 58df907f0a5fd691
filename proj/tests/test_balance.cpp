#include "balsp/balance.hpp"

#include <random>

#include "balsp/generate.hpp"
#include "balsp/oracles.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace balsp;
using testutil::graph;

TEST_CASE("find_balance worked examples") {
  SUBCASE("triangle (4,1,2): every arc balances at 4") {
    auto bv = find_balance(testutil::triangle_412());
    CHECK(bv.beta == std::vector<Wide>{4, 4, 4});
  }
  SUBCASE("two 2-cycles at different scales") {
    Graph g = graph(3, {{0, 1, 1}, {1, 0, 1}, {1, 2, 5}, {2, 1, 7}});
    auto bv = find_balance(g);
    CHECK(bv.beta == std::vector<Wide>{1, 1, 7, 7});
  }
  SUBCASE("uniform cycle") {
    Graph g = graph(4, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 0, 3}});
    auto bv = find_balance(g);
    CHECK(bv.beta == std::vector<Wide>{3, 3, 3, 3});
  }
}

TEST_CASE("find_balance matches the oracle on random graphs") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 250; ++iter) {
    RandomGraphSpec spec;
    spec.n = 2 + int32_t(rng() % 60);
    spec.m = spec.n + int32_t(rng() % (4 * spec.n));
    spec.min_cost = 1;
    spec.max_cost = 1 + Wide(rng() % 64);  // duplicate-heavy palettes too
    Graph g = random_graph(rng(), spec);
    FindBalanceStats st;
    auto got = find_balance(g, &st);
    auto want = beta_oracle(g);
    CHECK(got.beta == want.beta);
    // Recursion budget: per-depth arc volume <= m, depth <= log2 m.
    for (int64_t arcs : st.arcs_per_depth) CHECK(arcs <= g.arc_count());
    int32_t log2m = 0;
    while ((1 << log2m) < g.arc_count()) ++log2m;
    CHECK(st.max_depth <= log2m + 1);
  }
}

TEST_CASE("threshold_sequence recurrence") {
  SUBCASE("single value stops immediately") {
    std::vector<Wide> beta{3};
    auto seq = threshold_sequence(beta, 4);
    REQUIRE(seq.size() == 1);
    CHECK(seq[0].r == 3);
    CHECK(seq[0].special);
  }
  SUBCASE("regular doubling step") {
    std::vector<Wide> beta{1, 7};
    auto seq = threshold_sequence(beta, 4);
    REQUIRE(seq.size() == 2);
    CHECK(seq[0].r == 1);
    CHECK(seq[1].r == 8);
    CHECK_FALSE(seq[1].special);
  }
  SUBCASE("jump step") {
    std::vector<Wide> beta{1, 100};
    auto seq = threshold_sequence(beta, 4);
    REQUIRE(seq.size() == 2);
    CHECK(seq[1].r == 100);
    CHECK(seq[1].special);
  }
  SUBCASE("growth factor 2n holds") {
    std::mt19937_64 rng(8);
    for (int iter = 0; iter < 100; ++iter) {
      std::vector<Wide> beta;
      int k = 1 + int(rng() % 12);
      for (int i = 0; i < k; ++i) beta.push_back(1 + Wide(rng() % 100000));
      Wide n = Wide(1) << (1 + rng() % 5);
      auto seq = threshold_sequence(beta, n);
      for (size_t t = 1; t < seq.size(); ++t) CHECK(seq[t].r >= 2 * n * seq[t - 1].r);
      CHECK(seq.back().r >= *std::max_element(beta.begin(), beta.end()));
    }
  }
}

TEST_CASE("rough_balance worked examples") {
  RoughBalanceOptions opt;
  opt.check_invariants = true;
  SUBCASE("lopsided 4-cycle") {
    Graph g = graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 8}});
    auto res = rough_balance(g, opt);
    CHECK(res.n_pow2 == 4);
    Graph reduced = with_costs(g, reduced_costs(g, res.pot));
    CHECK(balance_check(reduced, 7 * res.n_pow2 * res.n_pow2).pass);
  }
  SUBCASE("uniform cycle stays balanced") {
    Graph g = graph(3, {{0, 1, 5}, {1, 2, 5}, {2, 0, 5}});
    auto res = rough_balance(g, opt);
    Graph reduced = with_costs(g, reduced_costs(g, res.pot));
    CHECK(balance_check(reduced, 1).pass);
  }
}

TEST_CASE("rough_balance iteration deltas follow the topological order") {
  // 2-cycle costs (1, 8): both balance values are 8, so the single
  // iteration has exactly the cheap arc active; the potential drops by
  // r, 2r along the order (tail before head), in scale-3n^2 numerators.
  Graph g = graph(2, {{0, 1, 1}, {1, 0, 8}});
  RoughBalanceOptions opt;
  opt.check_invariants = true;
  auto res = rough_balance(g, opt);
  CHECK(res.n_pow2 == 2);
  CHECK(res.pot.scale == 12);
  REQUIRE(res.trace.steps().size() == 1);
  const TraceStep& step = res.trace.steps()[0];
  CHECK(step.threshold == 8);
  REQUIRE(step.potential_deltas.size() == 2);
  CHECK(step.potential_deltas[0] == std::pair<int32_t, Wide>{0, -8});
  CHECK(step.potential_deltas[1] == std::pair<int32_t, Wide>{1, -16});
  auto rc = reduced_costs(g, res.pot);
  CHECK(rc == std::vector<Wide>{20, 88});
}

TEST_CASE("rough_balance with empty active set leaves potentials alone") {
  // Uniform 2-cycle: every arc has cost equal to its balance value, so no
  // iteration activates anything.
  Graph g = graph(2, {{0, 1, 5}, {1, 0, 5}});
  auto res = rough_balance(g, {});
  CHECK(res.pot.values == std::vector<Wide>{0, 0});
}

TEST_CASE("rough_balance randomized contract") {
  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 120; ++iter) {
    RandomGraphSpec spec;
    spec.n = 2 + int32_t(rng() % 63);
    spec.m = spec.n + int32_t(rng() % (4 * spec.n));
    spec.min_cost = 1;
    spec.max_cost = 1 + Wide(rng() % 1000000);
    Graph g = random_graph(rng(), spec);
    RoughBalanceOptions opt;
    opt.check_invariants = true;
    auto res = rough_balance(g, opt);
    auto rc = reduced_costs(g, res.pot);
    for (Wide c : rc) CHECK(c > 0);
    // Cycle sums scale exactly.
    Graph reduced = with_costs(g, rc);
    CHECK(balance_check(reduced, 7 * res.n_pow2 * res.n_pow2).pass);
    // Trace replay agrees with the returned potential.
    auto replay = compose_potential(res.trace);
    for (int32_t v = 0; v < g.node_count(); ++v)
      CHECK(replay[v] == res.pot.values[v]);
  }
}
