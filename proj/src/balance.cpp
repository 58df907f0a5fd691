#include "balsp/balance.hpp"

#include <algorithm>
#include <stdexcept>

#include "balsp/scc.hpp"
#include "balsp/union_find_increase.hpp"

namespace balsp {
namespace {

struct SubArc {
  int32_t tail, head;
  Wide cost;
  int32_t orig;  // arc id in the caller's graph
};

struct FbStats {
  FindBalanceStats* out;
  void record(int32_t depth, int64_t arcs) {
    if (!out) return;
    out->max_depth = std::max(out->max_depth, depth);
    if (static_cast<size_t>(depth) >= out->arcs_per_depth.size())
      out->arcs_per_depth.resize(depth + 1, 0);
    out->arcs_per_depth[depth] += arcs;
  }
  void scc() {
    if (out) ++out->scc_calls;
  }
};

void find_balance_rec(int32_t n, std::vector<SubArc> arcs,
                      std::vector<Wide>& beta, FbStats& st, int32_t depth) {
  if (n <= 1 || arcs.empty()) return;
  st.record(depth, static_cast<int64_t>(arcs.size()));
  std::sort(arcs.begin(), arcs.end(), [](const SubArc& a, const SubArc& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.orig < b.orig;
  });
  int64_t m = static_cast<int64_t>(arcs.size());

  // Arcs inside strongly connected pieces of the <=r subgraph, counted for
  // the half-the-arcs split rule.
  auto scc_at = [&](Wide r) {
    std::vector<std::pair<int32_t, int32_t>> sub;
    for (const SubArc& a : arcs)
      if (a.cost <= r) sub.emplace_back(a.tail, a.head);
    st.scc();
    return strongly_connected(n, sub);
  };
  auto inside_count = [&](const SccResult& sc, Wide r) {
    int64_t cnt = 0;
    for (const SubArc& a : arcs)
      if (a.cost <= r && sc.comp[a.tail] == sc.comp[a.head]) ++cnt;
    return cnt;
  };

  // Smallest sorted position h whose threshold captures >= m/2 arcs.
  int64_t lo = 0, hi = m;
  while (hi - lo > 1) {
    int64_t t = (lo + hi + 1) / 2;  // ceil midpoint
    Wide r = arcs[t - 1].cost;
    SccResult sc = scc_at(r);
    if (2 * inside_count(sc, r) >= m)
      hi = t;
    else
      lo = t;
  }
  int64_t h = hi;
  Wide r = arcs[h - 1].cost;

  // Pieces of the strict subgraph (all singletons when h == 1) and of the
  // <=r subgraph (everything when h == m).
  SccResult under;  // G[<r]
  if (h == 1) {
    under.count = n;
    under.comp.resize(n);
    for (int32_t v = 0; v < n; ++v) under.comp[v] = v;
  } else {
    std::vector<std::pair<int32_t, int32_t>> sub;
    for (const SubArc& a : arcs)
      if (a.cost < r) sub.emplace_back(a.tail, a.head);
    st.scc();
    under = strongly_connected(n, sub);
  }
  SccResult upto;  // G[<=r]
  if (h == m) {
    upto.count = 1;
    upto.comp.assign(n, 0);
  } else {
    upto = scc_at(r);
  }

  // Direct rule: arcs inside an <=r piece but on no cycle of the strict
  // subgraph balance at max(r, cost).
  for (const SubArc& a : arcs) {
    bool same_upto = upto.comp[a.tail] == upto.comp[a.head];
    bool same_under = a.cost < r && under.comp[a.tail] == under.comp[a.head];
    if (same_upto && !same_under) beta[a.orig] = std::max(r, a.cost);
  }

  // Recurse into each strict piece with >= 2 nodes.
  {
    std::vector<int32_t> size(under.count, 0);
    for (int32_t v = 0; v < n; ++v) ++size[under.comp[v]];
    std::vector<std::vector<SubArc>> piece(under.count);
    for (const SubArc& a : arcs)
      if (a.cost < r && under.comp[a.tail] == under.comp[a.head])
        piece[under.comp[a.tail]].push_back(a);
    for (int32_t c = 0; c < under.count; ++c) {
      if (size[c] < 2 || piece[c].empty()) continue;
      // Compact node ids within the piece.
      std::vector<int32_t> local(n, -1);
      int32_t k = 0;
      for (int32_t v = 0; v < n; ++v)
        if (under.comp[v] == c) local[v] = k++;
      for (SubArc& a : piece[c]) {
        a.tail = local[a.tail];
        a.head = local[a.head];
      }
      find_balance_rec(k, std::move(piece[c]), beta, st, depth + 1);
    }
  }

  // Recurse into the contraction of the <=r pieces. Parallel arcs collapse
  // to the cheapest; a dropped parallel arc inherits the pair's balance
  // value, floored by its own cost.
  if (upto.count > 1) {
    std::vector<SubArc> cross;
    std::vector<int32_t> cross_orig;
    for (const SubArc& a : arcs) {
      if (upto.comp[a.tail] == upto.comp[a.head]) continue;
      cross.push_back({upto.comp[a.tail], upto.comp[a.head], a.cost, a.orig});
    }
    std::sort(cross.begin(), cross.end(), [](const SubArc& a, const SubArc& b) {
      if (a.tail != b.tail) return a.tail < b.tail;
      if (a.head != b.head) return a.head < b.head;
      if (a.cost != b.cost) return a.cost < b.cost;
      return a.orig < b.orig;
    });
    std::vector<SubArc> dedup;
    struct Follower {
      int32_t orig;
      Wide cost;
      int32_t kept;  // dedup index of the surviving parallel arc
    };
    std::vector<Follower> follower;
    for (const SubArc& a : cross) {
      if (!dedup.empty() && dedup.back().tail == a.tail &&
          dedup.back().head == a.head) {
        follower.push_back({a.orig, a.cost,
                            static_cast<int32_t>(dedup.size()) - 1});
      } else {
        dedup.push_back(a);
      }
    }
    std::vector<int32_t> kept_orig(dedup.size());
    for (size_t i = 0; i < dedup.size(); ++i) kept_orig[i] = dedup[i].orig;
    find_balance_rec(upto.count, std::move(dedup), beta, st, depth + 1);
    for (const Follower& f : follower)
      beta[f.orig] = std::max(beta[kept_orig[f.kept]], f.cost);
  }
}

}  // namespace

BalanceValues find_balance(const Graph& g, FindBalanceStats* stats) {
  if (!is_strongly_connected(g))
    throw std::invalid_argument("find_balance: input must be strongly connected");
  for (const Arc& a : g.arcs())
    if (a.cost <= 0)
      throw std::invalid_argument("find_balance: costs must be positive");
  BalanceValues out;
  out.beta.assign(g.arc_count(), -1);
  FbStats st{stats};
  std::vector<SubArc> arcs(g.arc_count());
  for (int32_t e = 0; e < g.arc_count(); ++e)
    arcs[e] = {g.arc(e).tail, g.arc(e).head, g.arc(e).cost, e};
  find_balance_rec(g.node_count(), std::move(arcs), out.beta, st, 0);
  for (int32_t e = 0; e < g.arc_count(); ++e)
    if (out.beta[e] < 0) throw std::logic_error("find_balance: arc unassigned");
  return out;
}

std::vector<ThresholdStep> threshold_sequence(std::span<const Wide> beta,
                                              Wide n_pow2) {
  std::vector<Wide> vals(beta.begin(), beta.end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<ThresholdStep> seq;
  if (vals.empty()) return seq;
  Wide r = vals.front();
  Wide top = vals.back();
  seq.push_back({r, true});
  while (r < top) {
    // Any balance value in (r, 2n r]?
    auto it = std::upper_bound(vals.begin(), vals.end(), r);
    if (it != vals.end() && *it <= 2 * n_pow2 * r) {
      r = 2 * n_pow2 * r;
      seq.push_back({r, false});
    } else {
      r = *it;
      seq.push_back({r, true});
    }
  }
  return seq;
}

RoughBalanceResult rough_balance(const Graph& g,
                                 const RoughBalanceOptions& opt) {
  if (!is_strongly_connected(g))
    throw std::invalid_argument("rough_balance: input must be strongly connected");
  int32_t n0 = g.node_count();
  RoughBalanceResult res;
  res.n_pow2 = n0 <= 1 ? 1 : ceil_pow2(Wide(n0));
  Wide scale = 3 * res.n_pow2 * res.n_pow2;
  res.pot.scale = scale;
  res.pot.values.assign(n0, 0);
  res.trace = ContractionTrace(n0);
  if (n0 == 1 || g.arc_count() == 0) return res;

  BalanceValues bv = find_balance(g);
  std::vector<ThresholdStep> seq = threshold_sequence(bv.beta, res.n_pow2);

  // Arc ids ordered by balance value; one pointer feeds merges, a window
  // over the same order feeds the per-iteration active sets.
  std::vector<int32_t> by_beta(g.arc_count());
  for (int32_t e = 0; e < g.arc_count(); ++e) by_beta[e] = e;
  std::sort(by_beta.begin(), by_beta.end(), [&](int32_t a, int32_t b) {
    if (bv.beta[a] != bv.beta[b]) return bv.beta[a] < bv.beta[b];
    return a < b;
  });

  UnionFindIncrease ufi(n0);
  std::vector<int32_t> trace_id(n0);
  for (int32_t v = 0; v < n0; ++v) trace_id[v] = v;

  size_t merge_ptr = 0;   // arcs with beta <= r_{t-1}, consumed once
  size_t window_lo = 0;   // start of beta in (r_{t-1}, r_t]
  for (size_t t = 0; t < seq.size(); ++t) {
    Wide r_t = seq[t].r;
    Wide r_prev = t == 0 ? 0 : seq[t - 1].r;
    ++res.iterations;

    // Merge arcs: balance value <= r_prev, not yet consumed.
    std::vector<int32_t> merge_arcs;
    while (merge_ptr < by_beta.size() && bv.beta[by_beta[merge_ptr]] <= r_prev)
      merge_arcs.push_back(by_beta[merge_ptr++]);
    window_lo = merge_ptr;

    // Active arcs: balance value in (r_prev, r_t], cost filter by kind.
    std::vector<int32_t> active;
    for (size_t i = window_lo; i < by_beta.size(); ++i) {
      int32_t e = by_beta[i];
      if (bv.beta[e] > r_t) break;
      const Arc& a = g.arc(e);
      bool take = seq[t].special ? a.cost < bv.beta[e] : a.cost <= r_prev;
      if (take) active.push_back(e);
    }

    if (merge_arcs.empty() && active.empty()) continue;

    // One component pass handles the merges and yields a topological order
    // for the active subgraph.
    std::vector<int32_t> touched;
    std::vector<int32_t> index(n0, -1);
    auto touch = [&](int32_t root) {
      if (index[root] == -1) {
        index[root] = static_cast<int32_t>(touched.size());
        touched.push_back(root);
      }
      return index[root];
    };
    std::vector<std::pair<int32_t, int32_t>> scc_arcs;
    for (int32_t e : merge_arcs) {
      int32_t ta = ufi.find(g.arc(e).tail), he = ufi.find(g.arc(e).head);
      if (ta != he) scc_arcs.emplace_back(touch(ta), touch(he));
    }
    size_t merge_arc_count = scc_arcs.size();
    for (int32_t e : active) {
      int32_t ta = ufi.find(g.arc(e).tail), he = ufi.find(g.arc(e).head);
      if (ta == he)
        throw std::logic_error("rough_balance: active arc already contracted");
      scc_arcs.emplace_back(touch(ta), touch(he));
    }
    SccResult sc = strongly_connected(static_cast<int32_t>(touched.size()),
                                      scc_arcs);
    // Contract groups formed by the merge arcs.
    std::vector<std::vector<int32_t>> groups(sc.count);
    for (size_t i = 0; i < touched.size(); ++i)
      groups[sc.comp[i]].push_back(touched[i]);
    if (merge_arc_count == 0) {
      for (const auto& grp : groups)
        if (grp.size() > 1)
          throw std::logic_error("rough_balance: active arcs formed a cycle");
    }
    bool step_opened = false;
    for (const auto& grp : groups) {
      if (grp.size() < 2) continue;
      if (!step_opened) {
        res.trace.begin_step(static_cast<int32_t>(t) + 1, r_prev);
        step_opened = true;
      }
      std::vector<int32_t> members;
      for (int32_t root : grp) members.push_back(trace_id[root]);
      int32_t super = res.trace.record_merge(std::move(members));
      for (size_t i = 1; i < grp.size(); ++i) ufi.unite(grp[0], grp[i]);
      trace_id[ufi.find(grp[0])] = super;
    }

    if (active.empty()) continue;

    // Topological index over active-arc endpoints (post-merge classes, in
    // component order); the potential drops by j*r_t/(3n^2) along it.
    std::vector<uint8_t> f_incident(sc.count, 0);
    for (int32_t e : active) {
      int32_t ci = sc.comp[index[ufi.find(g.arc(e).tail)]];
      int32_t cj = sc.comp[index[ufi.find(g.arc(e).head)]];
      if (ci == cj)
        throw std::logic_error("rough_balance: active arc inside a class");
      if (ci > cj)
        throw std::logic_error("rough_balance: component order broken");
      f_incident[ci] = 1;
      f_incident[cj] = 1;
    }
    res.trace.begin_step(static_cast<int32_t>(t) + 1, r_t);
    Wide j = 0;
    for (int32_t c = 0; c < sc.count; ++c) {
      if (!f_incident[c]) continue;
      ++j;
      // Any member of the component identifies the post-merge class.
      int32_t root = ufi.find(groups[c].front());
      Wide delta = -j * r_t;
      ufi.increase(root, delta);
      res.trace.record_delta(trace_id[root], delta);
    }
  }

  for (int32_t v = 0; v < n0; ++v) res.pot.values[v] = ufi.value(v);

  if (opt.check_invariants) {
    // Reduced-cost window per arc around its bracketing threshold.
    for (int32_t e = 0; e < g.arc_count(); ++e) {
      const Arc& a = g.arc(e);
      Wide c2 = scale * a.cost + res.pot.values[a.tail] - res.pot.values[a.head];
      Wide r_tau = -1;
      for (const ThresholdStep& s : seq)
        if (bv.beta[e] <= s.r) {
          r_tau = s.r;
          break;
        }
      if (r_tau < 0) throw std::logic_error("rough_balance: no bracketing threshold");
      if (2 * c2 < r_tau || 2 * c2 > 7 * res.n_pow2 * res.n_pow2 * r_tau)
        throw std::logic_error("rough_balance: reduced cost escaped its window");
    }
  }
  return res;
}

}  // namespace balsp
