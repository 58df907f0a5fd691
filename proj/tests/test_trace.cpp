#include "balsp/trace.hpp"

#include "doctest.h"
#include "test_util.hpp"

using namespace balsp;

TEST_CASE("trace composition worked examples") {
  SUBCASE("single merge with one snapshot") {
    // {0,1} merge with deltas (0, -3); super potential stays 0.
    ContractionTrace t(2);
    t.begin_step(1, 1);
    t.record_delta(1, -3);
    t.record_merge({0, 1});
    auto pot = compose_potential(t);
    CHECK(pot == std::vector<Wide>{0, -3});
  }
  SUBCASE("nested merges compose by adding the super's value") {
    // {0,1} -> a with deltas (0,-2); then {a,2} -> r with a := -5, 2 := 0.
    ContractionTrace t(3);
    t.begin_step(1, 1);
    t.record_delta(1, -2);
    int32_t a = t.record_merge({0, 1});
    t.begin_step(2, 2);
    t.record_delta(a, -5);
    t.record_merge({a, 2});
    auto pot = compose_potential(t);
    CHECK(pot == std::vector<Wide>{-5, -7, 0});
    CHECK(t.complete());
  }
  SUBCASE("empty trace on a single node") {
    ContractionTrace t(1);
    CHECK(compose_potential(t) == std::vector<Wide>{0});
    CHECK(t.complete());
  }
  SUBCASE("prefix replay stops mid-way") {
    ContractionTrace t(2);
    t.begin_step(1, 1);
    t.record_delta(0, 4);
    t.record_merge({0, 1});
    t.begin_step(2, 2);
    t.record_delta(2, 10);  // applies to the super node
    auto full = compose_potential(t);
    CHECK(full == std::vector<Wide>{14, 10});
    auto prefix = compose_potential_prefix(t, 1);
    CHECK(prefix == std::vector<Wide>{4, 0});
  }
  SUBCASE("thresholds must not decrease") {
    ContractionTrace t(3);
    t.begin_step(1, 8);
    CHECK_THROWS_AS(t.begin_step(2, 4), std::logic_error);
  }
}
