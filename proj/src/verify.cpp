#include "balsp/verify.hpp"

#include <random>

#include "balsp/balance.hpp"
#include "balsp/generate.hpp"
#include "balsp/hierarchy.hpp"
#include "balsp/min_balance.hpp"
#include "balsp/pipeline.hpp"
#include "balsp/preprocess.hpp"
#include "balsp/refine.hpp"
#include "balsp/scc.hpp"
#include "balsp/split_findmin.hpp"
#include "balsp/union_find_increase.hpp"

namespace balsp {
namespace {

struct Runner {
  std::vector<OracleReport> reports;
  int64_t scale;  // 1 = sampled, larger = full
  uint64_t seed;

  void add(const std::string& property, const std::string& fingerprint,
           bool pass, const std::string& witness) {
    reports.push_back({property, fingerprint, pass, pass ? "" : witness});
  }

  Graph random_sc(std::mt19937_64& rng, int32_t max_n, Wide cmax,
                  Wide cmin = 1) {
    RandomGraphSpec spec;
    spec.n = 2 + int32_t(rng() % max_n);
    spec.m = spec.n + int32_t(rng() % (4 * spec.n));
    spec.min_cost = cmin;
    spec.max_cost = cmax;
    return random_graph(rng(), spec);
  }

  void scc_suite() {
    std::mt19937_64 rng(seed + 1);
    int64_t iters = 40 * scale;
    for (int64_t i = 0; i < iters; ++i) {
      RandomGraphSpec spec;
      spec.n = 2 + int32_t(rng() % 30);
      spec.m = int32_t(rng() % (3 * spec.n));
      spec.strongly_connected = false;
      Graph g = random_graph(rng(), spec);
      SccResult sc = strongly_connected(g.node_count(), g.arcs());
      for (const Arc& a : g.arcs())
        if (sc.comp[a.tail] > sc.comp[a.head]) {
          add("scc.topological_order", dimacs_fingerprint(g), false,
              "arc breaks the component order");
          return;
        }
    }
    add("scc.topological_order", "randomized", true, "");
  }

  static std::string dimacs_fingerprint(const Graph& g) {
    return "n=" + std::to_string(g.node_count()) +
           ",m=" + std::to_string(g.arc_count());
  }

  void contract_suite() {
    std::mt19937_64 rng(seed + 2);
    int64_t iters = 40 * scale;
    for (int64_t i = 0; i < iters; ++i) {
      RandomGraphSpec spec;
      spec.n = 2 + int32_t(rng() % 12);
      spec.m = int32_t(rng() % (3 * spec.n));
      spec.strongly_connected = false;
      Graph g = random_graph(rng(), spec);
      std::vector<int32_t> raw(spec.n);
      int32_t k = 1 + int32_t(rng() % spec.n);
      for (auto& c : raw) c = int32_t(rng() % k);
      Partition p = partition_from_classes(raw);
      Graph h = contract(g, p);
      for (const Arc& a : g.arcs()) {
        if (p.cls[a.tail] == p.cls[a.head]) continue;
        Wide best = kWideInf;
        for (const Arc& b : h.out(p.cls[a.tail]))
          if (b.head == p.cls[a.head]) best = b.cost;
        if (best > a.cost) {
          add("contract.min_cost_preserved", dimacs_fingerprint(g), false,
              "pair lost its cheapest arc");
          return;
        }
      }
    }
    add("contract.min_cost_preserved", "randomized", true, "");
  }

  void positivize_suite() {
    std::mt19937_64 rng(seed + 3);
    int64_t iters = 30 * scale;
    for (int64_t i = 0; i < iters; ++i) {
      Graph g = random_sc(rng, 11, 5, 0);
      auto res = positivize(g);
      for (const Arc& a : res.graph.arcs())
        if (a.cost < 1) {
          add("positivize.positive_costs", dimacs_fingerprint(g), false,
              "output cost below 1");
          return;
        }
      auto din = floyd_warshall(g);
      auto dout = floyd_warshall(res.graph);
      for (int32_t u = 0; u < g.node_count(); ++u)
        for (int32_t v = 0; v < g.node_count(); ++v) {
          int32_t cu = res.node_class[u], cv = res.node_class[v];
          if (cu == cv) continue;
          Wide want = res.n_pow2 * din[u][v] + res.pot.values[u] -
                      res.pot.values[v];
          if (dout[cu][cv] != want) {
            add("positivize.distance_correspondence", dimacs_fingerprint(g),
                false, "scaled distance mismatch");
            return;
          }
        }
    }
    add("positivize.positive_costs", "randomized", true, "");
    add("positivize.distance_correspondence", "randomized", true, "");
  }

  void ufi_suite() {
    int64_t seeds = 10 * scale;
    for (int64_t s = 0; s < seeds; ++s) {
      std::mt19937_64 rng(seed + 100 + s);
      int32_t n = 2 + int32_t(rng() % 200);
      UnionFindIncrease u(n);
      std::vector<Wide> sigma(n, 0);
      std::vector<int32_t> cls(n);
      for (int32_t i = 0; i < n; ++i) cls[i] = i;
      for (int op = 0; op < 2000; ++op) {
        int32_t i = int32_t(rng() % n);
        switch (rng() % 3) {
          case 0: {
            int32_t j = int32_t(rng() % n);
            u.unite(i, j);
            int32_t a = cls[i], b = cls[j];
            if (a != b)
              for (auto& c : cls)
                if (c == b) c = a;
            break;
          }
          case 1: {
            Wide d = Wide(int64_t(rng() % 2001) - 1000);
            u.increase(i, d);
            for (int32_t x = 0; x < n; ++x)
              if (cls[x] == cls[i]) sigma[x] += d;
            break;
          }
          default:
            break;
        }
        int32_t probe = int32_t(rng() % n);
        if (u.value(probe) != sigma[probe]) {
          add("union_find_increase.differential", "n=" + std::to_string(n),
              false, "value diverged from the flat simulator");
          return;
        }
      }
    }
    add("union_find_increase.differential", "randomized", true, "");
  }

  void sfm_suite() {
    int64_t seeds = 10 * scale;
    for (int64_t s = 0; s < seeds; ++s) {
      std::mt19937_64 rng(seed + 200 + s);
      int32_t n = 2 + int32_t(rng() % 200);
      SplitFindMin sfm(n);
      std::vector<Wide> key(n, kWideInf);
      std::vector<int32_t> start(n, 0);
      for (int op = 0; op < 2000; ++op) {
        int32_t e = int32_t(rng() % n);
        if (rng() % 3 == 0) {
          sfm.split(e);
          if (e > 0) {
            int32_t st = start[e];
            for (int32_t i = e; i < n && start[i] == st; ++i) start[i] = e;
          }
        } else {
          Wide w = Wide(rng() % 1000000);
          sfm.decreasekey(e, w);
          key[e] = std::min(key[e], w);
        }
        int32_t probe = int32_t(rng() % n);
        Wide want = kWideInf;
        for (int32_t i = start[probe]; i < n && start[i] == start[probe]; ++i)
          want = std::min(want, key[i]);
        if (sfm.findmin(probe) != want) {
          add("split_findmin.differential", "n=" + std::to_string(n), false,
              "range minimum diverged");
          return;
        }
      }
    }
    add("split_findmin.differential", "randomized", true, "");
  }

  void small_cycles_suite() {
    std::mt19937_64 rng(seed + 4);
    int64_t iters = 40 * scale;
    for (int64_t i = 0; i < iters; ++i) {
      int32_t n = 2 + int32_t(rng() % 50);
      int32_t m = 1 + int32_t(rng() % (4 * n));
      Wide L = Wide(rng() % 500), D = 1 + Wide(rng() % 200);
      std::vector<Arc> arcs;
      for (int32_t e = 0; e < m; ++e) {
        int32_t u = int32_t(rng() % n), v = int32_t(rng() % n);
        if (u == v) continue;
        arcs.push_back({u, v, L + Wide(rng() % static_cast<uint64_t>(4 * D))});
      }
      auto res = small_cycles(L, D, n, arcs);
      auto rep = check_small_cycles_output(n, arcs, L, D, res.partition, res.pot);
      if (!rep.pass) {
        add("small_cycles.postconditions", rep.fingerprint, false, rep.witness);
        return;
      }
    }
    add("small_cycles.postconditions", "randomized", true, "");
  }

  void find_balance_suite() {
    std::mt19937_64 rng(seed + 5);
    int64_t iters = 25 * scale;
    for (int64_t i = 0; i < iters; ++i) {
      Graph g = random_sc(rng, 40, 1 + Wide(rng() % 200));
      auto got = find_balance(g);
      auto want = beta_oracle(g);
      if (got.beta != want.beta) {
        add("find_balance.oracle_equality", dimacs_fingerprint(g), false,
            "balance values diverged from the incremental oracle");
        return;
      }
    }
    add("find_balance.oracle_equality", "randomized", true, "");
  }

  void balance_pipeline_suite() {
    std::mt19937_64 rng(seed + 6);
    int64_t iters = 15 * scale;
    for (int64_t i = 0; i < iters; ++i) {
      Graph g = random_sc(rng, 48, 1 + Wide(rng() % 1000000));
      RoughBalanceOptions ro;
      ro.check_invariants = true;
      auto rough = rough_balance(g, ro);
      Graph mid = with_costs(g, reduced_costs(g, rough.pot));
      auto rep7 = balance_check(mid, 7 * rough.n_pow2 * rough.n_pow2);
      if (!rep7.pass) {
        add("rough_balance.seven_n_squared", dimacs_fingerprint(g), false,
            rep7.witness);
        return;
      }
      MinBalanceOptions mo;
      mo.check_invariants = true;
      auto mb = min_balance(mid, mo);
      Graph fin = with_costs(mid, reduced_costs(mid, mb.pot));
      auto rep3 = balance_check(fin, 3);
      if (!rep3.pass) {
        add("min_balance.three_balanced", dimacs_fingerprint(g), false,
            rep3.witness);
        return;
      }
    }
    add("rough_balance.seven_n_squared", "randomized", true, "");
    add("min_balance.three_balanced", "randomized", true, "");
  }

  void characterization_suite() {
    std::mt19937_64 rng(seed + 7);
    int64_t iters = 20 * scale;
    for (int64_t i = 0; i < iters; ++i) {
      Graph g = random_sc(rng, 10, 1 + Wide(rng() % 16));
      for (Wide xi : {Wide(1), Wide(2), Wide(3)}) {
        bool a = min_balanced_by_arc_criterion(g, xi, 1);
        bool b = min_balanced_by_pairwise(g, xi, 1);
        bool c = min_balanced_by_cuts(g, xi, 1);
        if (a != b || b != c) {
          add("balance.characterization_equivalence", dimacs_fingerprint(g),
              false, "criteria disagree at xi=" + wide_str(xi));
          return;
        }
      }
    }
    add("balance.characterization_equivalence", "randomized", true, "");
  }

  void sssp_suite() {
    std::mt19937_64 rng(seed + 8);
    int64_t iters = 15 * scale;
    for (int64_t i = 0; i < iters; ++i) {
      RandomGraphSpec spec;
      spec.n = 1 + int32_t(rng() % 48);
      spec.m = int32_t(rng() % (4 * spec.n));
      spec.strongly_connected = rng() % 2 == 0;
      spec.min_cost = 0;
      spec.max_cost = 1 + Wide(rng() % 100000);
      Graph g = random_graph(rng(), spec);
      PipelineOptions popt;
      popt.check_invariants = true;
      Pipeline p = build_pipeline(g, popt);
      auto hrep = validate_hierarchy(p.hierarchy, p.reduced, 500, rng());
      if (!hrep.pass) {
        add("hierarchy.validity", dimacs_fingerprint(g), false, hrep.witness);
        return;
      }
      auto fw = floyd_warshall(g);
      bool ok = true;
      all_pairs(p, [&](int32_t s, const std::vector<Wide>& row) {
        for (int32_t v = 0; v < g.node_count() && ok; ++v)
          if (row[v] != fw[s][v]) ok = false;
      });
      if (!ok) {
        add("sssp.oracle_equality", dimacs_fingerprint(g), false,
            "distances diverged from the all-pairs oracle");
        return;
      }
    }
    add("hierarchy.validity", "randomized", true, "");
    add("sssp.oracle_equality", "randomized", true, "");
  }

  void fault_injection_suite() {
    // A deliberately corrupted reduced cost must be caught by the checker:
    // drop one arc far below its cheapest cycle.
    std::mt19937_64 rng(seed + 9);
    Graph g = random_sc(rng, 12, 50);
    PipelineOptions popt;
    Pipeline p = build_pipeline(g, popt);
    std::vector<Wide> costs;
    for (const Arc& a : p.reduced.arcs()) costs.push_back(8 * a.cost);
    costs[0] = 1;  // every cycle through it now carries a cost >= 8 arc
    Graph broken = with_costs(p.reduced, costs);
    auto rep = balance_check(broken, 3);
    add("verify.fault_injection_detected", dimacs_fingerprint(g), !rep.pass,
        "corrupted reduced cost slipped past the balance check");
  }
};

}  // namespace

std::vector<OracleReport> run_verification(const VerifyOptions& opt) {
  Runner r;
  r.scale = opt.level == VerifyLevel::full ? 4 : 1;
  r.seed = opt.seed;
  if (opt.level == VerifyLevel::off) return {};
  r.scc_suite();
  r.contract_suite();
  r.positivize_suite();
  r.ufi_suite();
  r.sfm_suite();
  r.small_cycles_suite();
  r.find_balance_suite();
  r.balance_pipeline_suite();
  r.characterization_suite();
  r.sssp_suite();
  r.fault_injection_suite();
  return r.reports;
}

}  // namespace balsp
