#include "balsp/min_balance.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "balsp/oracles.hpp"
#include "balsp/refine.hpp"
#include "balsp/scc.hpp"
#include "balsp/union_find_increase.hpp"

namespace balsp {
namespace {

void precheck_rough_balance(const Graph& g, Wide n_pow2) {
  Wide xi = 7 * n_pow2 * n_pow2;
  if (g.arc_count() <= 2000) {
    OracleReport rep = balance_check(g, xi);
    if (!rep.pass)
      throw std::invalid_argument("min_balance: input not 7n^2-min-balanced: " +
                                  rep.witness);
    return;
  }
  std::mt19937_64 rng(0x5eedu ^ static_cast<uint64_t>(g.arc_count()));
  int64_t samples = (g.arc_count() + 99) / 100;
  for (int64_t i = 0; i < samples; ++i) {
    int32_t e = static_cast<int32_t>(rng() % g.arc_count());
    if (beta_single(g, e) > xi * g.arc(e).cost)
      throw std::invalid_argument(
          "min_balance: sampled arc violates the 7n^2 precondition");
  }
}

struct Loop {
  const Graph& g;
  MinBalanceOptions opt;
  bool strongly_poly;

  int32_t n0;
  Wide n_pow2 = 1;
  Wide lam_num;  // lambda = lam_num / 2^rho
  Wide rho_pow;  // 2^rho
  std::vector<Wide> c3;           // prescaled costs
  std::vector<int32_t> by_cost;   // arc ids sorted by (c3, id)
  UnionFindIncrease ufi;
  std::vector<int32_t> trace_id;
  ContractionTrace trace;
  MinBalanceStats stats;
  int32_t live_classes;

  std::vector<int32_t> active;          // arc ids, live filter applied lazily
  std::vector<uint8_t> is_active;
  std::vector<int64_t> first_active;
  size_t admit_ptr = 0;
  size_t min_live_ptr = 0;

  explicit Loop(const Graph& graph, const MinBalanceOptions& o, bool strong)
      : g(graph),
        opt(o),
        strongly_poly(strong),
        n0(graph.node_count()),
        ufi(graph.node_count()),
        trace(graph.node_count()),
        live_classes(graph.node_count()) {
    if (opt.rho < 0 || opt.rho > 16)
      throw std::invalid_argument("min_balance: rho out of range [0, 16]");
    n_pow2 = n0 <= 1 ? 1 : ceil_pow2(Wide(n0));
    rho_pow = Wide(1) << opt.rho;
    lam_num = rho_pow + 1;
    c3.resize(g.arc_count());
    for (int32_t e = 0; e < g.arc_count(); ++e) {
      if (g.arc(e).cost < 1)
        throw std::invalid_argument("min_balance: costs must be positive");
      c3[e] = g.arc(e).cost << opt.rho;
    }
    by_cost.resize(g.arc_count());
    for (int32_t e = 0; e < g.arc_count(); ++e) by_cost[e] = e;
    std::sort(by_cost.begin(), by_cost.end(), [&](int32_t a, int32_t b) {
      if (c3[a] != c3[b]) return c3[a] < c3[b];
      return a < b;
    });
    is_active.assign(g.arc_count(), 0);
    first_active.assign(g.arc_count(), 0);
    trace_id.resize(n0);
    for (int32_t v = 0; v < n0; ++v) trace_id[v] = v;
  }

  bool arc_live(int32_t e) {
    return ufi.find(g.arc(e).tail) != ufi.find(g.arc(e).head);
  }

  Wide get_cost(int32_t e) {
    return c3[e] + ufi.value(g.arc(e).tail) - ufi.value(g.arc(e).head);
  }

  // c <= (n+1) * lambda * L, exactly: c * 2^rho <= (n+1) * L * lam_num.
  bool admissible(Wide c, Wide L) const {
    return c * rho_pow <= (n_pow2 + 1) * L * lam_num;
  }

  void admit(Wide L, int64_t t) {
    while (admit_ptr < by_cost.size()) {
      int32_t e = by_cost[admit_ptr];
      if (!arc_live(e)) {
        ++admit_ptr;
        continue;
      }
      if (!strongly_poly || admissible(c3[e], L)) {
        is_active[e] = 1;
        first_active[e] = t;
        active.push_back(e);
        ++admit_ptr;
        Wide rc = get_cost(e);
        if (rc < L)
          throw std::logic_error("min_balance: newly active arc below threshold");
        if (opt.check_invariants) {
          auto replay = compose_potential(trace);
          Wide rc2 = c3[e] + replay[g.arc(e).tail] - replay[g.arc(e).head];
          if (rc != rc2)
            throw std::logic_error("min_balance: incremental cost query "
                                   "disagrees with trace replay");
        }
      } else {
        break;
      }
    }
  }

  Wide min_live_cost() {
    while (min_live_ptr < by_cost.size() && !arc_live(by_cost[min_live_ptr]))
      ++min_live_ptr;
    return min_live_ptr < by_cost.size() ? c3[by_cost[min_live_ptr]] : -1;
  }

  MinBalanceResult run() {
    MinBalanceResult res;
    res.n_pow2 = n_pow2;
    res.pot.scale = rho_pow;
    res.pot.values.assign(n0, 0);
    if (n0 <= 1) {
      res.trace = std::move(trace);
      return res;
    }
    Wide cmin = kWideInf;
    for (Wide c : c3) cmin = std::min(cmin, c);
    Wide L = strongly_poly ? floor_pow2(cmin) : cmin;
    Wide D = L >> opt.rho;  // L divisible by 2^rho in both modes
    int64_t t = 1;
    admit(L, t);

    // L doubles every 2^rho iterations and is bounded by 7n^3 * max cost,
    // so the loop length is tightly bounded unless the precondition fails.
    Wide c3max = 0;
    for (Wide c : c3) c3max = std::max(c3max, c);
    int64_t cap = static_cast<int64_t>(rho_pow) *
                      (msb_index(7 * n_pow2 * n_pow2 * n_pow2 * c3max) + 8) * 2 +
                  64;

    while (live_classes > 1) {
      ++stats.iterations;
      stats.thresholds.push_back(L);
      // Drop contracted arcs from the active set.
      size_t w = 0;
      for (int32_t e : active) {
        if (arc_live(e)) {
          active[w++] = e;
        } else {
          is_active[e] = 0;
          stats.max_active_span =
              std::max(stats.max_active_span, t - first_active[e]);
        }
      }
      active.resize(w);

      if (opt.check_invariants) {
        for (int32_t e = 0; e < g.arc_count(); ++e)
          if (arc_live(e) && get_cost(e) < L)
            throw std::logic_error("min_balance: live arc below threshold");
      }

      if (!active.empty()) {
        run_small_cycles(L, D, t);
      } else {
        ++stats.idle_iterations;
      }

      // Threshold advance; jumps only at 2^rho boundaries.
      if (t % static_cast<int64_t>(rho_pow) == 0) {
        Wide next = L + D;
        if (strongly_poly && live_classes > 1) {
          Wide cm = min_live_cost();
          if (cm >= 0) {
            // floor_pow2(cm - n*lambda*L) over the 2^rho denominator.
            Wide num = cm * rho_pow - n_pow2 * L * lam_num;
            if (num >= rho_pow) {
              Wide cand = floor_pow2(num >> opt.rho);
              next = std::max(next, cand);
            }
          }
        }
        if (next % rho_pow != 0)
          throw std::logic_error("min_balance: threshold lost divisibility");
        L = next;
        D = L >> opt.rho;
      } else {
        L = L + D;
      }
      ++t;
      admit(L, t);
      if (t > cap)
        throw std::logic_error(
            "min_balance: iteration budget exceeded (is the input balanced?)");
    }

    for (int32_t e : active)
      stats.max_active_span = std::max(stats.max_active_span, t - first_active[e]);
    if (opt.check_invariants) {
      // Doubling across every 2^rho window.
      const auto& ls = stats.thresholds;
      for (size_t i = 0; i + static_cast<size_t>(rho_pow) < ls.size(); ++i)
        if (ls[i + static_cast<size_t>(rho_pow)] < 2 * ls[i])
          throw std::logic_error("min_balance: threshold window failed to double");
    }
    for (int32_t v = 0; v < n0; ++v) res.pot.values[v] = ufi.value(v);
    res.trace = std::move(trace);
    res.stats = std::move(stats);
    return res;
  }

  void run_small_cycles(Wide L, Wide D, int64_t t) {
    ++stats.small_cycles_calls;
    stats.sum_active += static_cast<int64_t>(active.size());
    // Compact the active endpoints' classes.
    std::vector<int32_t> roots;
    std::vector<int32_t> index(n0, -1);
    auto touch = [&](int32_t root) {
      if (index[root] == -1) {
        index[root] = static_cast<int32_t>(roots.size());
        roots.push_back(root);
      }
      return index[root];
    };
    std::vector<Arc> sub;
    sub.reserve(active.size());
    for (int32_t e : active) {
      int32_t ti = touch(ufi.find(g.arc(e).tail));
      int32_t hi = touch(ufi.find(g.arc(e).head));
      sub.push_back({ti, hi, get_cost(e)});
    }
    RefineOptions ropt;
    ropt.check_invariants = opt.check_invariants;
    SmallCyclesResult sc =
        small_cycles(L, D, static_cast<int32_t>(roots.size()), sub, ropt);

    trace.begin_step(static_cast<int32_t>(t), L);
    for (size_t i = 0; i < roots.size(); ++i) {
      if (sc.pot[i] == 0) continue;
      ufi.increase(roots[i], sc.pot[i]);
      trace.record_delta(trace_id[roots[i]], sc.pot[i]);
    }
    std::vector<std::vector<int32_t>> groups(sc.partition.count);
    for (size_t i = 0; i < roots.size(); ++i)
      groups[sc.partition.cls[i]].push_back(roots[i]);
    for (const auto& grp : groups) {
      if (grp.size() < 2) continue;
      std::vector<int32_t> members;
      for (int32_t root : grp) members.push_back(trace_id[root]);
      int32_t super = trace.record_merge(std::move(members));
      for (size_t i = 1; i < grp.size(); ++i) ufi.unite(grp[0], grp[i]);
      trace_id[ufi.find(grp[0])] = super;
      live_classes -= static_cast<int32_t>(grp.size()) - 1;
    }
  }
};

MinBalanceResult run_loop(const Graph& g, const MinBalanceOptions& opt,
                          bool strong) {
  if (!is_strongly_connected(g))
    throw std::invalid_argument("min_balance: input must be strongly connected");
  Loop loop(g, opt, strong);
  if (opt.precheck_balanced && g.node_count() > 1)
    precheck_rough_balance(g, loop.n_pow2);
  return loop.run();
}

}  // namespace

MinBalanceResult min_balance(const Graph& g, const MinBalanceOptions& opt) {
  return run_loop(g, opt, /*strong=*/true);
}

MinBalanceResult simple_min_balance(const Graph& g,
                                    const MinBalanceOptions& opt) {
  return run_loop(g, opt, /*strong=*/false);
}

}  // namespace balsp
