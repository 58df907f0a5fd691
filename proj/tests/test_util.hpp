#pragma once

#include <string>

#include "balsp/graph.hpp"
#include "balsp/wide.hpp"
#include "doctest.h"

namespace doctest {
template <>
struct StringMaker<balsp::Wide> {
  static String convert(const balsp::Wide& v) {
    return balsp::wide_str(v).c_str();
  }
};
}  // namespace doctest

namespace balsp::testutil {

inline Graph graph(int32_t n, std::vector<Arc> arcs) {
  return Graph(n, std::move(arcs));
}

// Triangle 1->2 (4), 2->3 (1), 3->1 (2) from the worked examples, 0-indexed.
inline Graph triangle_412() {
  return graph(3, {{0, 1, 4}, {1, 2, 1}, {2, 0, 2}});
}

}  // namespace balsp::testutil

// Arc structure with replacement costs (negative allowed; no Graph checks).
inline std::vector<balsp::Arc> arcs_with(std::vector<balsp::Arc> arcs,
                                         const std::vector<balsp::Wide>& costs) {
  for (size_t e = 0; e < arcs.size(); ++e) arcs[e].cost = costs[e];
  return arcs;
}
