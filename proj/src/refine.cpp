#include "balsp/refine.hpp"

#include <algorithm>
#include <stdexcept>

#include "balsp/scc.hpp"

namespace balsp {

RefineEngine::RefineEngine(int32_t n, std::span<const Arc> arcs,
                           std::vector<int64_t> bar, RefineOptions opt)
    : n_(n), arcs_(arcs.begin(), arcs.end()), bar_(std::move(bar)), opt_(opt) {
  if (arcs_.size() != bar_.size())
    throw std::invalid_argument("refine: arc/bar size mismatch");
  for (int64_t b : bar_)
    if (b < -1) throw std::invalid_argument("refine: bar cost below -1");
  pot_.assign(n_, 0);
  uf_.resize(n_);
  members_.resize(n_);
  for (int32_t v = 0; v < n_; ++v) {
    uf_[v] = v;
    members_[v] = {v};
  }
}

int32_t RefineEngine::find(int32_t v) {
  while (uf_[v] != v) {
    uf_[v] = uf_[uf_[v]];
    v = uf_[v];
  }
  return v;
}

int64_t RefineEngine::reduced_bar(int32_t e) const {
  const Arc& a = arcs_[e];
  return bar_[e] + pot_[a.tail] - pot_[a.head];
}

bool RefineEngine::arc_live(int32_t e) {
  return find(arcs_[e].tail) != find(arcs_[e].head);
}

RefineEngine::RepGraph RefineEngine::rep_graph() {
  RepGraph rg;
  rg.index.assign(n_, -1);
  for (int32_t v = 0; v < n_; ++v) {
    int32_t r = find(v);
    if (rg.index[r] == -1) {
      rg.index[r] = static_cast<int32_t>(rg.reps.size());
      rg.reps.push_back(r);
    }
  }
  rg.out.resize(rg.reps.size());
  for (int32_t e = 0; e < static_cast<int32_t>(arcs_.size()); ++e) {
    int32_t t = find(arcs_[e].tail), h = find(arcs_[e].head);
    if (t != h) rg.out[rg.index[t]].push_back(e);
  }
  return rg;
}

void RefineEngine::relabel_class(int32_t rep, int64_t delta) {
  for (int32_t v : members_[rep]) pot_[v] += delta;
}

void RefineEngine::check_floor() const {
  for (int32_t e = 0; e < static_cast<int32_t>(arcs_.size()); ++e)
    if (reduced_bar(e) < -1)
      throw std::logic_error("refine: reduced bar cost fell below -1");
}

void RefineEngine::decycle() {
  RepGraph rg = rep_graph();
  std::vector<std::pair<int32_t, int32_t>> nonpos;
  for (size_t i = 0; i < rg.reps.size(); ++i)
    for (int32_t e : rg.out[i])
      if (reduced_bar(e) <= 0)
        nonpos.emplace_back(static_cast<int32_t>(i),
                            rg.index[find(arcs_[e].head)]);
  SccResult sc =
      strongly_connected(static_cast<int32_t>(rg.reps.size()), nonpos);
  if (sc.count == static_cast<int32_t>(rg.reps.size())) return;  // acyclic
  std::vector<std::vector<int32_t>> groups(sc.count);
  for (size_t i = 0; i < rg.reps.size(); ++i)
    groups[sc.comp[i]].push_back(rg.reps[i]);
  for (const auto& grp : groups) {
    if (grp.size() < 2) continue;
    // Union into the member-richest rep to keep list moves small.
    int32_t target = grp[0];
    for (int32_t r : grp)
      if (members_[r].size() > members_[target].size()) target = r;
    for (int32_t r : grp) {
      if (r == target) continue;
      uf_[r] = target;
      auto& src = members_[r];
      members_[target].insert(members_[target].end(), src.begin(), src.end());
      src.clear();
      src.shrink_to_fit();
      ++stats_.contractions;
    }
  }
}

int32_t RefineEngine::improvable_count() {
  std::vector<uint8_t> mark(n_, 0);
  int32_t count = 0;
  for (int32_t e = 0; e < static_cast<int32_t>(arcs_.size()); ++e) {
    if (reduced_bar(e) != -1 || !arc_live(e)) continue;
    int32_t h = find(arcs_[e].head);
    if (!mark[h]) {
      mark[h] = 1;
      ++count;
    }
  }
  return count;
}

RefineEngine::DagLabels RefineEngine::dag_labels() {
  DagLabels out;
  out.rg = rep_graph();
  const RepGraph& rg = out.rg;
  int32_t r = static_cast<int32_t>(rg.reps.size());
  // Kahn topological order over the nonpositive subgraph.
  std::vector<int32_t> indeg(r, 0);
  for (int32_t i = 0; i < r; ++i)
    for (int32_t e : rg.out[i])
      if (reduced_bar(e) <= 0) ++indeg[rg.index[find(arcs_[e].head)]];
  std::vector<int32_t> order;
  order.reserve(r);
  for (int32_t i = 0; i < r; ++i)
    if (indeg[i] == 0) order.push_back(i);
  for (size_t q = 0; q < order.size(); ++q) {
    int32_t i = order[q];
    for (int32_t e : rg.out[i]) {
      if (reduced_bar(e) > 0) continue;
      int32_t j = rg.index[find(arcs_[e].head)];
      if (--indeg[j] == 0) order.push_back(j);
    }
  }
  if (static_cast<int32_t>(order.size()) != r)
    throw std::logic_error(
        "refine: nonpositive subgraph has a cycle; decycle first");

  // Virtual-source DAG labels: depth(j) = -(max number of improvable arcs
  // on any path into j); improvable arcs weigh -1, other nonpositive arcs 0.
  out.depth.assign(r, 0);
  out.pred.assign(r, -1);
  out.improvable.assign(r, 0);
  for (int32_t i : order) {
    for (int32_t e : rg.out[i]) {
      int64_t rb = reduced_bar(e);
      if (rb > 0) continue;
      int32_t j = rg.index[find(arcs_[e].head)];
      if (rb == -1) out.improvable[j] = 1;
      int64_t cand = out.depth[i] + (rb == -1 ? -1 : 0);
      if (cand < out.depth[j]) {
        out.depth[j] = cand;
        out.pred[j] = e;
      }
    }
  }
  for (int32_t i = 0; i < r; ++i) out.improvable_total += out.improvable[i];
  return out;
}

RefineEngine::Plan RefineEngine::antichain_or_chain() {
  DagLabels dl = dag_labels();
  const RepGraph& rg = dl.rg;
  int32_t r = static_cast<int32_t>(rg.reps.size());
  Plan plan;
  if (dl.improvable_total == 0) return plan;
  int64_t sqrtk = static_cast<int64_t>(ceil_isqrt(Wide(dl.improvable_total)));

  int32_t deepest = 0;
  for (int32_t i = 1; i < r; ++i)
    if (dl.depth[i] < dl.depth[deepest] ||
        (dl.depth[i] == dl.depth[deepest] && rg.reps[i] < rg.reps[deepest]))
      deepest = i;

  if (dl.depth[deepest] <= -sqrtk) {
    plan.is_chain = true;
    std::vector<int32_t> rev;
    int32_t cur = deepest;
    while (cur != -1) {
      rev.push_back(cur);
      int32_t e = dl.pred[cur];
      cur = e == -1 ? -1 : rg.index[find(arcs_[e].tail)];
    }
    std::reverse(rev.begin(), rev.end());
    for (size_t i = 0; i < rev.size(); ++i) {
      plan.path_reps.push_back(rg.reps[rev[i]]);
      if (dl.pred[rev[i]] != -1 && reduced_bar(dl.pred[rev[i]]) == -1)
        plan.chain_improvable.push_back(rg.reps[rev[i]]);
    }
    return plan;
  }

  // Largest level set of improvable reps; ties toward the smallest level.
  std::vector<std::vector<int32_t>> levels(static_cast<size_t>(sqrtk) + 1);
  for (int32_t i = 0; i < r; ++i) {
    if (!dl.improvable[i]) continue;
    int64_t q = -dl.depth[i];
    if (q >= 1 && q <= sqrtk)
      levels[static_cast<size_t>(q)].push_back(rg.reps[i]);
  }
  size_t best = 1;
  for (size_t q = 2; q < levels.size(); ++q)
    if (levels[q].size() > levels[best].size()) best = q;
  plan.antichain = levels[best];
  std::sort(plan.antichain.begin(), plan.antichain.end());
  return plan;
}

std::vector<int32_t> RefineEngine::level_antichain() {
  DagLabels dl = dag_labels();
  const RepGraph& rg = dl.rg;
  if (dl.improvable_total == 0) return {};
  std::vector<std::vector<int32_t>> levels;
  for (size_t i = 0; i < rg.reps.size(); ++i) {
    if (!dl.improvable[i]) continue;
    size_t q = static_cast<size_t>(-dl.depth[i]);
    if (levels.size() < q) levels.resize(q);
    levels[q - 1].push_back(rg.reps[i]);
  }
  size_t best = 0;
  for (size_t q = 1; q < levels.size(); ++q)
    if (levels[q].size() > levels[best].size()) best = q;
  std::vector<int32_t> out = levels[best];
  std::sort(out.begin(), out.end());
  return out;
}

void RefineEngine::cut_relabel(std::span<const int32_t> sources) {
  RepGraph rg = rep_graph();
  std::vector<uint8_t> in_s(rg.reps.size(), 0);
  std::vector<int32_t> stack, closure;
  for (int32_t s : sources) {
    int32_t i = rg.index[find(s)];
    if (!in_s[i]) {
      in_s[i] = 1;
      stack.push_back(i);
      closure.push_back(i);
    }
  }
  while (!stack.empty()) {
    int32_t i = stack.back();
    stack.pop_back();
    for (int32_t e : rg.out[i]) {
      if (reduced_bar(e) > 0) continue;
      int32_t j = rg.index[find(arcs_[e].head)];
      if (!in_s[j]) {
        in_s[j] = 1;
        stack.push_back(j);
        closure.push_back(j);
      }
    }
  }
  if (opt_.check_invariants) {
    for (size_t i = 0; i < rg.reps.size(); ++i) {
      if (!in_s[i]) continue;
      for (int32_t e : rg.out[i])
        if (!in_s[rg.index[find(arcs_[e].head)]] && reduced_bar(e) < 1)
          throw std::logic_error("refine: cut_relabel closure not closed");
    }
  }
  for (int32_t i : closure) relabel_class(rg.reps[i], -1);
  ++stats_.relabel_steps;
  if (opt_.check_invariants) check_floor();
}

void RefineEngine::eliminate_chain(const Plan& plan) {
  const auto& w_list = plan.chain_improvable;
  int32_t t = static_cast<int32_t>(w_list.size());
  if (t == 0) return;
  RepGraph rg = rep_graph();
  int32_t r = static_cast<int32_t>(rg.reps.size());

  // In-adjacency for recording negative-cycle witness arcs.
  std::vector<std::vector<int32_t>> in(r);
  for (int32_t i = 0; i < r; ++i)
    for (int32_t e : rg.out[i]) in[rg.index[find(arcs_[e].head)]].push_back(e);

  std::vector<int32_t> join_step(r, 0);  // 0 = not in the swept set
  auto dec = [&](int32_t i, int32_t s) -> int64_t {
    return join_step[i] > 0 ? s - join_step[i] : 0;
  };
  auto rbar_cur = [&](int32_t e, int32_t s) -> int64_t {
    int32_t ti = rg.index[find(arcs_[e].tail)];
    int32_t hi = rg.index[find(arcs_[e].head)];
    return reduced_bar(e) - dec(ti, s) + dec(hi, s);
  };
  // Boundary arcs hit reduced cost 0 at a predictable step; queue them so
  // the swept set stays reachability-closed without rescans.
  std::vector<std::vector<int32_t>> enable(static_cast<size_t>(t) + 2);
  std::vector<int32_t> stack;
  auto expand = [&](int32_t i, int32_t s) {
    if (join_step[i] > 0) return;
    join_step[i] = s;
    stack.push_back(i);
    while (!stack.empty()) {
      int32_t u = stack.back();
      stack.pop_back();
      for (int32_t e : rg.out[u]) {
        int32_t v = rg.index[find(arcs_[e].head)];
        if (join_step[v] > 0) continue;
        int64_t rc = rbar_cur(e, s);
        if (rc <= 0) {
          join_step[v] = s;
          stack.push_back(v);
        } else if (s + rc <= t) {
          enable[static_cast<size_t>(s + rc)].push_back(e);
        }
      }
    }
  };

  for (int32_t s = 1; s <= t; ++s) {
    for (int32_t e : enable[static_cast<size_t>(s)]) {
      int32_t hi = rg.index[find(arcs_[e].head)];
      if (join_step[hi] == 0 && rbar_cur(e, s) <= 0) expand(hi, s);
    }
    int32_t wi = rg.index[find(w_list[t - s])];
    expand(wi, s);
    // An improvable in-arc whose tail is already swept cannot be lifted by
    // the relabel; it witnesses a negative cycle and is contracted later.
    for (int32_t e : in[wi]) {
      int32_t ti = rg.index[find(arcs_[e].tail)];
      if (join_step[ti] > 0 && rbar_cur(e, s) == -1) {
        recorded_.push_back(e);
        ++stats_.recorded_cycle_arcs;
      }
    }
    ++stats_.relabel_steps;
  }
  for (int32_t i = 0; i < r; ++i) {
    if (join_step[i] == 0) continue;
    relabel_class(rg.reps[i], -(int64_t(t) - join_step[i] + 1));
  }
  if (opt_.check_invariants) check_floor();
}

void RefineEngine::run() {
  decycle();
  while (true) {
    int32_t k = improvable_count();
    if (k == 0) break;
    ++stats_.rounds;
    int32_t quota = static_cast<int32_t>(ceil_isqrt(Wide(k)));
    Plan plan = antichain_or_chain();
    if (plan.is_chain)
      eliminate_chain(plan);
    else
      cut_relabel(plan.antichain);
    decycle();
    // The batched path sweep can strand a handful of its targets when an
    // arc enables into a node that ends in a different class; level-set
    // relabels remove a whole level each, so they top the round up to the
    // sqrt(k) quota.
    while (true) {
      int32_t k2 = improvable_count();
      if (k2 == 0 || k - k2 >= quota) break;
      std::vector<int32_t> extra = level_antichain();
      cut_relabel(extra);
      decycle();
      ++stats_.topup_relabels;
    }
    if (opt_.check_invariants) {
      check_floor();
      int32_t k2 = improvable_count();
      if (k2 != 0 && k - k2 < quota)
        throw std::logic_error(
            "refine: round eliminated too few improvable nodes");
    }
    if (stats_.rounds > 4 * int64_t(n_) + 16)
      throw std::logic_error("refine: round budget exceeded");
  }
}

RefineResult RefineEngine::take_result() {
  RefineResult res;
  std::vector<int32_t> raw(n_);
  for (int32_t v = 0; v < n_; ++v) raw[v] = find(v);
  res.partition = partition_from_classes(raw);
  res.pot.resize(n_);
  for (int32_t v = 0; v < n_; ++v) {
    if (pot_[v] > 0 || pot_[v] < -int64_t(n_))
      throw std::logic_error("refine: potential escaped [-n, 0]");
    res.pot[v] = pot_[v];
  }
  res.recorded_arcs = std::move(recorded_);
  res.stats = stats_;
  return res;
}

RefineResult goldberg_refine(int32_t n, std::span<const Arc> arcs,
                             std::span<const Wide> costs, RefineOptions opt) {
  std::vector<int64_t> bar(arcs.size());
  for (size_t e = 0; e < arcs.size(); ++e) {
    if (costs[e] < -1)
      throw std::invalid_argument("goldberg_refine: cost below -1");
    // A reduced bar cost can only become nonpositive if bar <= n.
    bar[e] = static_cast<int64_t>(std::min<Wide>(costs[e], Wide(n) + 2));
  }
  RefineEngine eng(n, arcs, std::move(bar), opt);
  eng.run();
  return eng.take_result();
}

SmallCyclesResult small_cycles(Wide L, Wide D, int32_t n,
                               std::span<const Arc> arcs, RefineOptions opt) {
  if (D < 1) throw std::invalid_argument("small_cycles: D must be >= 1");
  if (L < 0) throw std::invalid_argument("small_cycles: L must be >= 0");
  std::vector<int64_t> bar(arcs.size());
  for (size_t e = 0; e < arcs.size(); ++e) {
    Wide c = arcs[e].cost;
    if (c < L) throw std::invalid_argument("small_cycles: cost below L");
    if (c < L + D) {
      bar[e] = -1;
    } else if (c <= L + 2 * D) {
      bar[e] = 0;
    } else {
      // Largest k with L + (k+1)D <= c, capped at n+2: beyond that the arc
      // can never reach the nonpositive range.
      int64_t lo = 1, hi = int64_t(n) + 2;
      while (lo < hi) {
        int64_t mid = (lo + hi + 1) / 2;
        if (L + (Wide(mid) + 1) * D <= c)
          lo = mid;
        else
          hi = mid - 1;
      }
      bar[e] = lo;
    }
  }
  RefineEngine eng(n, arcs, std::move(bar), opt);
  eng.run();
  RefineResult raw = eng.take_result();
  SmallCyclesResult res;
  res.partition = std::move(raw.partition);
  res.pot.resize(n);
  for (int32_t v = 0; v < n; ++v) res.pot[v] = D * raw.pot[v];
  res.stats = raw.stats;
  return res;
}

SmallCyclesResult small_cycles(const Graph& g, Wide L, Wide D,
                               RefineOptions opt) {
  return small_cycles(L, D, g.node_count(), g.arcs(), opt);
}

}  // namespace balsp
