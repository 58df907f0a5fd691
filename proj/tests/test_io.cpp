#include "balsp/io.hpp"

#include <sstream>

#include "balsp/generate.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace balsp;

TEST_CASE("dimacs parse") {
  std::istringstream in("c comment\np sp 2 2\na 1 2 5\na 2 1 3\n");
  auto res = read_dimacs(in);
  CHECK(res.graph.node_count() == 2);
  CHECK(res.graph.arc_count() == 2);
  CHECK(res.warnings.empty());
}

TEST_CASE("dimacs duplicate arcs dedup with warning") {
  std::istringstream in("p sp 2 2\na 1 2 5\na 1 2 4\n");
  auto res = read_dimacs(in);
  CHECK(res.graph.arc_count() == 1);
  CHECK(res.graph.arc(0).cost == 4);
  CHECK(res.warnings.size() == 1);
}

TEST_CASE("dimacs errors carry line numbers") {
  SUBCASE("node out of range") {
    std::istringstream in("p sp 2 1\na 1 3 5\n");
    try {
      read_dimacs(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line_number == 2);
    }
  }
  SUBCASE("malformed arc") {
    std::istringstream in("p sp 2 1\na 1 2\n");
    CHECK_THROWS_AS(read_dimacs(in), ParseError);
  }
  SUBCASE("cost over ceiling") {
    std::istringstream in("p sp 2 1\na 1 2 1099511627777\n");  // 2^40 + 1
    CHECK_THROWS_AS(read_dimacs(in), ParseError);
  }
  SUBCASE("missing problem line") {
    std::istringstream in("c nothing\n");
    CHECK_THROWS_AS(read_dimacs(in), ParseError);
  }
}

TEST_CASE("emit then ingest round trips") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    RandomGraphSpec spec;
    spec.n = 1 + int32_t(rng() % 12);
    spec.m = int32_t(rng() % (2 * spec.n + 1));
    spec.strongly_connected = spec.n > 1 && (rng() % 2 == 0);
    Graph g = random_graph(rng(), spec);
    std::istringstream in(dimacs_string(g));
    auto back = read_dimacs(in);
    CHECK(back.graph.node_count() == g.node_count());
    REQUIRE(back.graph.arc_count() == g.arc_count());
    for (int e = 0; e < g.arc_count(); ++e) {
      CHECK(back.graph.arc(e).tail == g.arc(e).tail);
      CHECK(back.graph.arc(e).head == g.arc(e).head);
      CHECK(back.graph.arc(e).cost == g.arc(e).cost);
    }
  }
}
