// Command-line front end: balance / sssp / apsp / verify / bench over
// DIMACS shortest-path files.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "balsp/balance.hpp"
#include "balsp/generate.hpp"
#include "balsp/io.hpp"
#include "balsp/min_balance.hpp"
#include "balsp/oracles.hpp"
#include "balsp/pipeline.hpp"
#include "balsp/verify.hpp"

using namespace balsp;
using nlohmann::json;

namespace {

struct Common {
  std::string input;
  std::string format = "text";
  std::string level = "sampled";
  int32_t rho = 0;
  uint64_t seed = 1;
  bool check = false;
};

VerifyLevel parse_level(const std::string& s) {
  if (s == "off") return VerifyLevel::off;
  if (s == "full") return VerifyLevel::full;
  return VerifyLevel::sampled;
}

Graph load(const Common& c) {
  auto res = read_dimacs_file(c.input);
  for (const std::string& w : res.warnings) std::cerr << "warning: " << w << '\n';
  return res.graph;
}

std::string dist_str(Wide d) { return d >= kWideInf ? "unreachable" : wide_str(d); }

json dist_json(Wide d) {
  return d >= kWideInf ? json(nullptr) : json(wide_str(d));
}

Pipeline make_pipeline(const Graph& g, const Common& c, bool want_hierarchy) {
  PipelineOptions opt;
  opt.rho = c.rho;
  opt.want_hierarchy = want_hierarchy;
  opt.check_invariants = c.level == "full";
  opt.precheck_balanced = c.level == "full";
  return build_pipeline(g, opt);
}

int cmd_balance(const Common& c) {
  Graph g = load(c);
  Pipeline p = make_pipeline(g, c, /*want_hierarchy=*/c.rho == 0);
  auto [xi_num, xi_den] = xi_for_rho(c.rho);
  bool verified = false, balanced = false;
  std::string witness;
  if (c.level == "full") {
    auto rep = balance_check(p.reduced, xi_num, xi_den);
    verified = true;
    balanced = rep.pass;
    witness = rep.witness;
  }
  if (c.format == "json") {
    json out;
    out["schema"] = 1;
    out["command"] = "balance";
    out["rho"] = c.rho;
    out["xi"] = {{"num", wide_str(xi_num)}, {"den", wide_str(xi_den)}};
    out["n_pow2"] = wide_str(p.n_pow2);
    json pots = json::array();
    for (int32_t v = 0; v < g.node_count(); ++v)
      pots.push_back(wide_str(p.node_potential[p.reduced_node(v)]));
    out["potential"] = {{"scale", wide_str(p.scale)}, {"numerators", pots}};
    json arcs = json::array();
    for (const Arc& a : g.arcs()) {
      Wide rc = p.scale * a.cost + p.node_potential[p.reduced_node(a.tail)] -
                p.node_potential[p.reduced_node(a.head)];
      arcs.push_back({{"tail", a.tail + 1},
                      {"head", a.head + 1},
                      {"cost", wide_str(a.cost)},
                      {"reduced", wide_str(rc)}});
    }
    out["arcs"] = arcs;
    json thresholds = json::array();
    for (Wide t : p.balance_stats.thresholds) thresholds.push_back(wide_str(t));
    out["stats"] = {{"iterations", p.balance_stats.iterations},
                    {"idle_iterations", p.balance_stats.idle_iterations},
                    {"sum_active", p.balance_stats.sum_active},
                    {"thresholds", thresholds},
                    {"rough_iterations", p.rough_iterations}};
    if (p.has_hierarchy) {
      const ComponentHierarchy& h = p.hierarchy;
      json verts = json::array();
      for (int32_t off = 0; off < (int32_t)h.children.size(); ++off) {
        int32_t id = h.leaf_count + off;
        json ch = json::array();
        for (int32_t cchild : h.children[off]) ch.push_back(cchild);
        verts.push_back({{"id", id},
                         {"a", wide_str(h.level[off])},
                         {"U", wide_str(h.path_bound[off])},
                         {"eta", wide_str(h.bucket_count[off])},
                         {"children", ch}});
      }
      out["hierarchy"] = {{"leaves", h.leaf_count},
                          {"root", h.root},
                          {"eta_sum", wide_str(h.eta_sum())},
                          {"vertices", verts}};
    }
    if (verified) out["balanced"] = balanced;
    if (!witness.empty()) out["witness"] = witness;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "nodes: " << g.node_count() << "  arcs: " << g.arc_count()
              << "\nscale: " << wide_str(p.scale) << '\n';
    for (int32_t v = 0; v < g.node_count(); ++v)
      std::cout << "pi(" << (v + 1)
                << ") = " << wide_str(p.node_potential[p.reduced_node(v)])
                << " / " << wide_str(p.scale) << '\n';
    std::cout << "iterations: " << p.balance_stats.iterations
              << "  sum_active: " << p.balance_stats.sum_active << '\n';
    std::cout << "thresholds:";
    for (Wide t : p.balance_stats.thresholds) std::cout << ' ' << wide_str(t);
    std::cout << '\n';
    if (verified)
      std::cout << "balanced: " << (balanced ? "true" : "false") << "  xi: "
                << wide_str(xi_num)
                << (xi_den == 1 ? "" : "/" + wide_str(xi_den)) << '\n';
    if (!witness.empty()) std::cout << "witness: " << witness << '\n';
  }
  return verified && !balanced ? 1 : 0;
}

int cmd_sssp(const Common& c, int64_t source1) {
  Graph g = load(c);
  if (source1 < 1 || source1 > g.node_count()) {
    std::cerr << "error: source out of range\n";
    return 2;
  }
  Pipeline p = make_pipeline(g, c, true);
  SsspEngine engine(p.reduced, p.hierarchy);
  auto dist = query_distances(p, engine, static_cast<int32_t>(source1 - 1));
  int64_t mismatches = 0;
  if (c.check) {
    auto want = dijkstra(g, static_cast<int32_t>(source1 - 1));
    for (size_t v = 0; v < dist.size(); ++v)
      if (dist[v] != want[v]) ++mismatches;
  }
  if (c.format == "json") {
    json out;
    out["schema"] = 1;
    out["command"] = "sssp";
    out["source"] = source1;
    json ds = json::array();
    for (Wide d : dist) ds.push_back(dist_json(d));
    out["distances"] = ds;
    if (c.check) out["mismatches"] = mismatches;
    std::cout << out.dump(2) << '\n';
  } else {
    for (size_t v = 0; v < dist.size(); ++v)
      std::cout << dist_str(dist[v]) << (v + 1 < dist.size() ? ' ' : '\n');
    if (c.check) std::cout << "mismatches: " << mismatches << '\n';
  }
  return mismatches == 0 ? 0 : 1;
}

int cmd_apsp(const Common& c, bool stream, int32_t threads) {
  Graph g = load(c);
  int64_t cells = int64_t(g.node_count()) * g.node_count();
  if (!stream && cells > 100000000) {
    std::cerr << "error: matrix would exceed the memory cap; use --stream\n";
    return 2;
  }
  if (c.check && g.node_count() > 512) {
    std::cerr << "error: --check needs n <= 512\n";
    return 2;
  }
  Pipeline p = make_pipeline(g, c, true);
  std::vector<std::vector<Wide>> want;
  if (c.check) want = floyd_warshall(g);
  int64_t mismatches = 0;
  json rows = json::array();
  auto emit = [&](int32_t s, const std::vector<Wide>& row) {
    if (c.check)
      for (size_t v = 0; v < row.size(); ++v)
        if (row[v] != want[s][v]) ++mismatches;
    if (c.format == "json") {
      json r = json::array();
      for (Wide d : row) r.push_back(dist_json(d));
      if (stream) {
        json line;
        line["source"] = s + 1;
        line["distances"] = r;
        std::cout << line.dump() << '\n';
      } else {
        rows.push_back(r);
      }
    } else {
      for (size_t v = 0; v < row.size(); ++v)
        std::cout << dist_str(row[v]) << (v + 1 < row.size() ? ' ' : '\n');
    }
  };
  if (stream || threads <= 1) {
    all_pairs(p, emit);
  } else {
    auto matrix = all_pairs_matrix(p, threads);
    for (int32_t s = 0; s < g.node_count(); ++s) emit(s, matrix[s]);
  }
  if (c.format == "json" && !stream) {
    json out;
    out["schema"] = 1;
    out["command"] = "apsp";
    out["distances"] = rows;
    if (c.check) out["mismatches"] = mismatches;
    std::cout << out.dump(2) << '\n';
  } else if (c.check) {
    std::cout << "mismatches: " << mismatches << '\n';
  }
  return mismatches == 0 ? 0 : 1;
}

int cmd_verify(const Common& c) {
  VerifyOptions opt;
  opt.level = parse_level(c.level);
  opt.seed = c.seed;
  auto reports = run_verification(opt);
  bool all_pass = true;
  if (c.format == "json") {
    json out;
    out["schema"] = 1;
    out["command"] = "verify";
    json rs = json::array();
    for (const auto& r : reports) {
      all_pass = all_pass && r.pass;
      rs.push_back({{"property", r.property},
                    {"fingerprint", r.fingerprint},
                    {"pass", r.pass},
                    {"witness", r.witness}});
    }
    out["reports"] = rs;
    out["pass"] = all_pass;
    std::cout << out.dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      all_pass = all_pass && r.pass;
      std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.property;
      if (!r.pass) std::cout << "  [" << r.fingerprint << "] " << r.witness;
      std::cout << '\n';
    }
    std::cout << (all_pass ? "verify: all properties hold\n"
                           : "verify: failures found\n");
  }
  return all_pass ? 0 : 1;
}

int cmd_bench(const Common& c) {
  using clock = std::chrono::steady_clock;
  struct Row {
    std::string family;
    int32_t n;
    int32_t m;
    double wall_ms;
    int64_t sum_active;
    int64_t iterations;
    int64_t main_calls;
    int64_t relaxations;
    std::string eta_sum;
  };
  std::vector<Row> rows;
  std::vector<std::string> violations;

  // Family A: arc count doubles at fixed n; the active-arc volume per
  // balancing run must stay near-linear in m.
  {
    std::vector<double> ks;
    int64_t prev_sum = -1;
    for (int32_t m = 1 << 10; m <= 1 << 15; m <<= 1) {
      RandomGraphSpec spec;
      spec.n = 512;
      spec.m = m;
      spec.min_cost = 1;
      spec.max_cost = 1000000000;
      Graph g = random_graph(c.seed + m, spec);
      auto t0 = clock::now();
      Pipeline p = make_pipeline(g, c, false);
      double ms =
          std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      ks.push_back(double(p.balance_stats.sum_active) /
                   (double(g.arc_count()) * std::log2(double(spec.n))));
      if (prev_sum > 0 &&
          double(p.balance_stats.sum_active) > 2.5 * double(prev_sum))
        violations.push_back("sum_active grew over 2.5x at m=" +
                             std::to_string(m));
      prev_sum = p.balance_stats.sum_active;
      rows.push_back({"fixed_n", spec.n, g.arc_count(), ms,
                      p.balance_stats.sum_active, p.balance_stats.iterations, 0,
                      0, "0"});
    }
    std::vector<double> sorted = ks;
    std::sort(sorted.begin(), sorted.end());
    double mid = sorted[sorted.size() / 2];
    for (double k : ks)
      if (k > 1.3 * mid)
        violations.push_back("active-volume constant drifted above the 30% band");
  }

  // Family B: bounded-degree graphs with doubling n; per-query work must
  // stay linear in n and relaxations within m + n.
  {
    std::vector<double> cs;
    for (int32_t n = 1 << 7; n <= 1 << 11; n <<= 1) {
      RandomGraphSpec spec;
      spec.n = n;
      spec.m = 4 * n;
      spec.min_cost = 1;
      spec.max_cost = 1000000;
      Graph g = random_graph(c.seed + n, spec);
      auto t0 = clock::now();
      Pipeline p = make_pipeline(g, c, true);
      SsspEngine engine(p.reduced, p.hierarchy);
      SsspStats stats;
      std::mt19937_64 rng(c.seed + n);
      int64_t main_calls = 0, relaxations = 0;
      const int32_t queries = 4;
      for (int32_t q = 0; q < queries; ++q) {
        query_distances(p, engine, int32_t(rng() % n), {}, &stats);
        main_calls += stats.main_calls;
        relaxations += stats.relaxations;
        if (stats.relaxations > p.reduced.arc_count() + n)
          violations.push_back("relaxations exceeded m + n at n=" +
                               std::to_string(n));
      }
      double ms =
          std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      cs.push_back(double(main_calls) / double(queries) / double(n));
      Wide eta = p.hierarchy.eta_sum();
      if (eta >= 6 * Wide(n))
        violations.push_back("bucket budget reached 6n at n=" +
                             std::to_string(n));
      rows.push_back({"bounded_degree", n, g.arc_count(), ms,
                      p.balance_stats.sum_active, p.balance_stats.iterations,
                      main_calls / queries, relaxations / queries,
                      wide_str(eta)});
    }
    std::vector<double> sorted = cs;
    std::sort(sorted.begin(), sorted.end());
    double mid = sorted[sorted.size() / 2];
    for (double cv : cs)
      if (cv > 1.3 * mid)
        violations.push_back("main-loop constant drifted above the 30% band");
  }

  if (c.format == "json") {
    json out;
    out["schema"] = 1;
    out["command"] = "bench";
    json rs = json::array();
    for (const Row& r : rows)
      rs.push_back({{"family", r.family},
                    {"n", r.n},
                    {"m", r.m},
                    {"wall_ms", r.wall_ms},
                    {"sum_active", r.sum_active},
                    {"iterations", r.iterations},
                    {"main_calls", r.main_calls},
                    {"relaxations", r.relaxations},
                    {"eta_sum", r.eta_sum}});
    out["rows"] = rs;
    out["violations"] = violations;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "family,n,m,wall_ms,sum_active,iterations,main_calls,"
                 "relaxations,eta_sum\n";
    for (const Row& r : rows)
      std::cout << r.family << ',' << r.n << ',' << r.m << ',' << r.wall_ms
                << ',' << r.sum_active << ',' << r.iterations << ','
                << r.main_calls << ',' << r.relaxations << ',' << r.eta_sum
                << '\n';
    for (const std::string& v : violations)
      std::cerr << "violation: " << v << '\n';
  }
  return violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed shortest paths via balanced reduced costs"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("input", c.input, "DIMACS .gr file")->required();
    sub->add_option("--format", c.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--rho", c.rho, "balance sharpness: xi = 1 + 1/2^(rho-1)");
    sub->add_option("--seed", c.seed, "seed for randomized corpora");
    sub->add_option("--level", c.level, "verification level")
        ->check(CLI::IsMember({"off", "sampled", "full"}));
  };

  auto* balance = app.add_subcommand("balance", "balance the cost function");
  add_common(balance, true);

  auto* sssp = app.add_subcommand("sssp", "single-source distances");
  int64_t source = 1;
  sssp->add_option("-s,--source", source, "source node (1-indexed)")
      ->required();
  sssp->add_flag("--check", c.check, "compare against the textbook oracle");
  add_common(sssp, true);

  auto* apsp = app.add_subcommand("apsp", "all-pairs distances");
  bool stream = false;
  int32_t threads = 1;
  apsp->add_flag("--stream", stream, "emit one row per line");
  apsp->add_flag("--check", c.check, "compare against the dense oracle");
  apsp->add_option("--threads", threads, "worker threads (matrix mode)");
  add_common(apsp, true);

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, false);

  auto* bench = app.add_subcommand("bench", "scaling families and counters");
  add_common(bench, false);

  CLI11_PARSE(app, argc, argv);
  try {
    if (balance->parsed()) return cmd_balance(c);
    if (sssp->parsed()) return cmd_sssp(c, source);
    if (apsp->parsed()) return cmd_apsp(c, stream, threads);
    if (verify->parsed()) return cmd_verify(c);
    if (bench->parsed()) return cmd_bench(c);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
