#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "balsp/graph.hpp"

namespace balsp {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_number(line) {}
  int line_number;
};

struct IngestResult {
  Graph graph;
  std::vector<std::string> warnings;
};

// DIMACS shortest-path dialect:
//   c <comment>
//   p sp <nodes> <arcs>
//   a <tail> <head> <cost>      (1-indexed endpoints)
// Parallel arcs are deduplicated to the minimum cost with a warning.
IngestResult read_dimacs(std::istream& in, const GraphLimits& limits = {});
IngestResult read_dimacs_file(const std::string& path,
                              const GraphLimits& limits = {});

void write_dimacs(const Graph& g, std::ostream& out);
std::string dimacs_string(const Graph& g);

}  // namespace balsp
