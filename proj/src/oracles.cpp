#include "balsp/oracles.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "balsp/scc.hpp"

namespace balsp {
namespace {

std::string arc_str(const Arc& a) {
  return "(" + std::to_string(a.tail) + "->" + std::to_string(a.head) +
         ", c=" + wide_str(a.cost) + ")";
}

std::vector<Wide> sorted_distinct_costs(std::span<const Arc> arcs) {
  std::vector<Wide> costs;
  costs.reserve(arcs.size());
  for (const Arc& a : arcs) costs.push_back(a.cost);
  std::sort(costs.begin(), costs.end());
  costs.erase(std::unique(costs.begin(), costs.end()), costs.end());
  return costs;
}

}  // namespace

std::vector<Wide> bottleneck_from(const Graph& g, int32_t i) {
  // Dijkstra with max composition: label = least achievable path maximum.
  std::vector<Wide> d(g.node_count(), kWideInf);
  using Entry = std::pair<Wide, int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  d[i] = 0;
  pq.push({0, i});
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv != d[v]) continue;
    for (const Arc& a : g.out(v)) {
      Wide nd = std::max(dv, a.cost);
      if (nd < d[a.head]) {
        d[a.head] = nd;
        pq.push({nd, a.head});
      }
    }
  }
  return d;
}

Wide bottleneck(const Graph& g, int32_t i, int32_t j) {
  if (i == j) return 0;
  return bottleneck_from(g, i)[j];
}

std::vector<std::vector<Wide>> bottleneck_matrix(const Graph& g) {
  std::vector<std::vector<Wide>> b(g.node_count());
  for (int32_t i = 0; i < g.node_count(); ++i) {
    b[i] = bottleneck_from(g, i);
    b[i][i] = 0;
  }
  return b;
}

BalanceValues beta_oracle(const Graph& g) {
  if (!is_strongly_connected(g))
    throw std::invalid_argument("beta_oracle: input must be strongly connected");
  BalanceValues out;
  out.beta.assign(g.arc_count(), -1);
  std::vector<Wide> costs = sorted_distinct_costs(g.arcs());
  std::vector<Arc> sub;
  int64_t assigned = 0;
  for (Wide r : costs) {
    sub.clear();
    for (const Arc& a : g.arcs())
      if (a.cost <= r) sub.push_back(a);
    SccResult sc = strongly_connected(g.node_count(), sub);
    for (int32_t e = 0; e < g.arc_count(); ++e) {
      const Arc& a = g.arc(e);
      if (out.beta[e] < 0 && a.cost <= r && sc.comp[a.tail] == sc.comp[a.head]) {
        out.beta[e] = r;
        ++assigned;
      }
    }
    if (assigned == g.arc_count()) break;
  }
  if (assigned != g.arc_count())
    throw std::logic_error("beta_oracle: unassigned arcs");
  return out;
}

Wide beta_single(const Graph& g, int32_t arc_id) {
  std::vector<Wide> costs = sorted_distinct_costs(g.arcs());
  const Arc& a = g.arc(arc_id);
  auto cycle_at = [&](Wide r) {
    if (a.cost > r) return false;
    std::vector<Arc> sub;
    for (const Arc& x : g.arcs())
      if (x.cost <= r) sub.push_back(x);
    SccResult sc = strongly_connected(g.node_count(), sub);
    return sc.comp[a.tail] == sc.comp[a.head];
  };
  size_t lo = 0, hi = costs.size() - 1;
  if (!cycle_at(costs[hi]))
    throw std::invalid_argument("beta_single: arc lies on no cycle");
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (cycle_at(costs[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return costs[lo];
}

OracleReport balance_check(const Graph& g, Wide xi_num, Wide xi_den) {
  OracleReport rep;
  rep.property = "balance_check(xi=" + wide_str(xi_num) + "/" + wide_str(xi_den) + ")";
  rep.fingerprint = "n=" + std::to_string(g.node_count()) +
                    ",m=" + std::to_string(g.arc_count());
  BalanceValues bv = beta_oracle(g);
  for (int32_t e = 0; e < g.arc_count(); ++e) {
    if (bv.beta[e] * xi_den > xi_num * g.arc(e).cost) {
      rep.pass = false;
      rep.witness = "arc " + arc_str(g.arc(e)) + " beta=" + wide_str(bv.beta[e]);
      return rep;
    }
  }
  return rep;
}

bool min_balanced_by_arc_criterion(const Graph& g, Wide xi_num, Wide xi_den) {
  BalanceValues bv = beta_oracle(g);
  for (int32_t e = 0; e < g.arc_count(); ++e)
    if (bv.beta[e] * xi_den > xi_num * g.arc(e).cost) return false;
  return true;
}

bool min_balanced_by_pairwise(const Graph& g, Wide xi_num, Wide xi_den) {
  auto b = bottleneck_matrix(g);
  for (int32_t i = 0; i < g.node_count(); ++i)
    for (int32_t j = 0; j < g.node_count(); ++j) {
      if (i == j) continue;
      if (b[j][i] * xi_den > xi_num * b[i][j]) return false;
    }
  return true;
}

bool min_balanced_by_cuts(const Graph& g, Wide xi_num, Wide xi_den) {
  int32_t n = g.node_count();
  if (n > 12) throw std::invalid_argument("min_balanced_by_cuts: n > 12");
  if (n == 1) return true;
  for (uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    Wide out_min = kWideInf, in_min = kWideInf;  // arcs leaving / entering S
    for (const Arc& a : g.arcs()) {
      bool t_in = (mask >> a.tail) & 1, h_in = (mask >> a.head) & 1;
      if (t_in && !h_in) out_min = std::min(out_min, a.cost);
      if (!t_in && h_in) in_min = std::min(in_min, a.cost);
    }
    if (in_min * xi_den > xi_num * out_min) return false;
  }
  return true;
}

std::vector<Wide> dijkstra(const Graph& g, int32_t s) {
  std::vector<Wide> d(g.node_count(), kWideInf);
  using Entry = std::pair<Wide, int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  d[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv != d[v]) continue;
    for (const Arc& a : g.out(v)) {
      Wide nd = dv + a.cost;
      if (nd < d[a.head]) {
        d[a.head] = nd;
        pq.push({nd, a.head});
      }
    }
  }
  return d;
}

std::vector<std::vector<Wide>> floyd_warshall(const Graph& g) {
  int32_t n = g.node_count();
  if (n > 512) throw std::invalid_argument("floyd_warshall: n > 512");
  std::vector<std::vector<Wide>> d(n, std::vector<Wide>(n, kWideInf));
  for (int32_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const Arc& a : g.arcs())
    d[a.tail][a.head] = std::min(d[a.tail][a.head], a.cost);
  for (int32_t k = 0; k < n; ++k)
    for (int32_t i = 0; i < n; ++i) {
      if (d[i][k] == kWideInf) continue;
      for (int32_t j = 0; j < n; ++j)
        if (d[k][j] != kWideInf) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  return d;
}

namespace {

// Shared skeleton: per-class strong connectivity over a cost window plus
// cross-class floors.
OracleReport check_partition_contract(
    int32_t n, std::span<const Arc> arcs, const Partition& p,
    std::span<const Wide> pot, Wide inside_floor, Wide window_hi,
    Wide cross_floor, Wide pot_lo, Wide pot_multiple, const char* name) {
  OracleReport rep;
  rep.property = name;
  rep.fingerprint = "n=" + std::to_string(n) + ",m=" + std::to_string(arcs.size());
  auto fail = [&](const std::string& w) {
    rep.pass = false;
    rep.witness = w;
    return rep;
  };
  if (static_cast<int32_t>(p.cls.size()) != n || p.count < 1)
    return fail("malformed partition");
  for (int32_t v = 0; v < n; ++v)
    if (p.cls[v] < 0 || p.cls[v] >= p.count) return fail("class id out of range");
  for (int32_t v = 0; v < n; ++v) {
    if (pot[v] > 0 || pot[v] < pot_lo)
      return fail("pot[" + std::to_string(v) + "]=" + wide_str(pot[v]) +
                  " outside [" + wide_str(pot_lo) + ", 0]");
    if (pot_multiple > 1 && ((pot[v] % pot_multiple) != 0))
      return fail("pot[" + std::to_string(v) + "] not a multiple of " +
                  wide_str(pot_multiple));
  }
  std::vector<Wide> red(arcs.size());
  for (size_t e = 0; e < arcs.size(); ++e)
    red[e] = arcs[e].cost + pot[arcs[e].tail] - pot[arcs[e].head];
  for (size_t e = 0; e < arcs.size(); ++e) {
    const Arc& a = arcs[e];
    bool inside = p.cls[a.tail] == p.cls[a.head];
    if (inside && red[e] < inside_floor)
      return fail("in-class arc " + arc_str(a) + " reduced " + wide_str(red[e]));
    if (!inside && red[e] < cross_floor)
      return fail("cross arc " + arc_str(a) + " reduced " + wide_str(red[e]));
  }
  // Strong connectivity of every class over window arcs.
  std::vector<Arc> window;
  for (size_t e = 0; e < arcs.size(); ++e) {
    const Arc& a = arcs[e];
    if (p.cls[a.tail] == p.cls[a.head] && red[e] >= inside_floor &&
        red[e] <= window_hi)
      window.push_back(a);
  }
  SccResult sc = strongly_connected(n, window);
  std::vector<int32_t> class_comp(p.count, -1);
  for (int32_t v = 0; v < n; ++v) {
    int32_t c = p.cls[v];
    if (class_comp[c] == -1) {
      class_comp[c] = sc.comp[v];
    } else if (class_comp[c] != sc.comp[v]) {
      return fail("class " + std::to_string(c) +
                  " not strongly connected in its cost window");
    }
  }
  return rep;
}

}  // namespace

OracleReport check_small_cycles_output(int32_t n, std::span<const Arc> arcs,
                                       Wide L, Wide D, const Partition& p,
                                       std::span<const Wide> pot) {
  return check_partition_contract(n, arcs, p, pot,
                                  /*inside_floor=*/L, /*window_hi=*/L + 2 * D,
                                  /*cross_floor=*/L + D,
                                  /*pot_lo=*/-Wide(n) * D, /*pot_multiple=*/D,
                                  "small_cycles_postconditions");
}

OracleReport check_refine_output(int32_t n, std::span<const Arc> arcs,
                                 const Partition& p,
                                 std::span<const Wide> pot) {
  return check_partition_contract(n, arcs, p, pot,
                                  /*inside_floor=*/-1, /*window_hi=*/0,
                                  /*cross_floor=*/0,
                                  /*pot_lo=*/-Wide(n), /*pot_multiple=*/1,
                                  "refine_postconditions");
}

}  // namespace balsp
