#include "balsp/io.hpp"

#include <fstream>
#include <sstream>

namespace balsp {
namespace {

bool parse_i64(const std::string& tok, int64_t* out) {
  if (tok.empty()) return false;
  size_t i = tok[0] == '-' ? 1 : 0;
  if (i == tok.size()) return false;
  int64_t v = 0;
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') return false;
    if (v > (INT64_MAX - 9) / 10) return false;
    v = v * 10 + (tok[i] - '0');
  }
  *out = tok[0] == '-' ? -v : v;
  return true;
}

}  // namespace

IngestResult read_dimacs(std::istream& in, const GraphLimits& limits) {
  IngestResult res;
  std::string line;
  int lineno = 0;
  int64_t n = -1, m = -1;
  std::vector<Arc> arcs;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;  // blank line
    if (kind == "c") continue;
    if (kind == "p") {
      if (n != -1) throw ParseError(lineno, "duplicate problem line");
      std::string prob;
      std::string ntok, mtok;
      if (!(ls >> prob >> ntok >> mtok) || prob != "sp")
        throw ParseError(lineno, "expected 'p sp <n> <m>'");
      if (!parse_i64(ntok, &n) || !parse_i64(mtok, &m) || n < 1 || m < 0)
        throw ParseError(lineno, "bad problem line values");
      if (n > limits.max_nodes)
        throw ParseError(lineno, "node count exceeds limit " +
                                     std::to_string(limits.max_nodes));
      arcs.reserve(static_cast<size_t>(m));
    } else if (kind == "a") {
      if (n == -1) throw ParseError(lineno, "arc before problem line");
      std::string ttok, htok, ctok;
      if (!(ls >> ttok >> htok >> ctok))
        throw ParseError(lineno, "expected 'a <tail> <head> <cost>'");
      int64_t t, h, c;
      if (!parse_i64(ttok, &t) || !parse_i64(htok, &h) || !parse_i64(ctok, &c))
        throw ParseError(lineno, "bad arc line values");
      if (t < 1 || t > n || h < 1 || h > n)
        throw ParseError(lineno, "node id out of range");
      if (t == h) throw ParseError(lineno, "self-loop not allowed");
      if (c < 0) throw ParseError(lineno, "negative cost");
      if (Wide(c) > limits.max_cost)
        throw ParseError(lineno, "cost exceeds ceiling");
      arcs.push_back({static_cast<int32_t>(t - 1), static_cast<int32_t>(h - 1),
                      Wide(c)});
    } else {
      throw ParseError(lineno, "unknown line kind '" + kind + "'");
    }
  }
  if (n == -1) throw ParseError(lineno, "missing problem line");
  if (m >= 0 && static_cast<int64_t>(arcs.size()) != m)
    res.warnings.push_back("arc count " + std::to_string(arcs.size()) +
                           " differs from header " + std::to_string(m));
  int64_t dropped = 0;
  res.graph = Graph(static_cast<int32_t>(n), std::move(arcs), &dropped);
  if (dropped > 0)
    res.warnings.push_back(std::to_string(dropped) +
                           " parallel arc(s) deduplicated to minimum cost");
  return res;
}

IngestResult read_dimacs_file(const std::string& path,
                              const GraphLimits& limits) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_dimacs(in, limits);
}

void write_dimacs(const Graph& g, std::ostream& out) {
  out << "p sp " << g.node_count() << ' ' << g.arc_count() << '\n';
  for (const Arc& a : g.arcs())
    out << "a " << (a.tail + 1) << ' ' << (a.head + 1) << ' ' << wide_str(a.cost)
        << '\n';
}

std::string dimacs_string(const Graph& g) {
  std::ostringstream os;
  write_dimacs(g, os);
  return os.str();
}

}  // namespace balsp
