#include "balsp/hierarchy.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <stdexcept>

#include "balsp/oracles.hpp"

namespace balsp {

int32_t ComponentHierarchy::lca(int32_t u, int32_t v) const {
  while (u != v) {
    if (depth[u] >= depth[v])
      u = parent[u];
    else
      v = parent[v];
  }
  return u;
}

Wide ComponentHierarchy::eta_sum() const {
  Wide s = 0;
  for (Wide e : bucket_count) s += e;
  return s;
}

ComponentHierarchy build_hierarchy(const ContractionTrace& trace,
                                   int32_t rho) {
  if (rho != 0)
    throw std::invalid_argument("build_hierarchy: only rho = 0 is supported");
  ComponentHierarchy h;
  h.leaf_count = trace.base_nodes();
  int32_t ids = trace.id_count();
  h.parent.assign(ids, -1);
  h.children.resize(ids - h.leaf_count);
  h.level.resize(ids - h.leaf_count);

  if (h.leaf_count == 1) {
    h.root = 0;
    h.depth = {0};
    h.leaf_order = {0};
    h.leaf_pos = {0};
    return h;
  }
  if (!trace.complete())
    throw std::invalid_argument("build_hierarchy: trace is incomplete");

  // Trace super ids double as hierarchy vertex ids; merges arrive bottom-up.
  for (const TraceStep& step : trace.steps()) {
    for (const TraceMerge& mg : step.merges) {
      Wide a = step.threshold;
      if (a < 1 || (a & (a - 1)) != 0)
        throw std::invalid_argument("build_hierarchy: level not a power of two");
      h.level[mg.super_id - h.leaf_count] = a;
      for (int32_t mem : mg.members) {
        h.parent[mem] = mg.super_id;
        h.children[mg.super_id - h.leaf_count].push_back(mem);
      }
    }
  }
  h.root = ids - 1;
  if (h.parent[h.root] != -1)
    throw std::logic_error("build_hierarchy: last super node is not the root");
  for (int32_t id = 0; id < ids - 1; ++id)
    if (h.parent[id] == -1)
      throw std::logic_error("build_hierarchy: disconnected vertex");

  // Internal children must sit at least one doubling below their parent.
  for (int32_t id = h.leaf_count; id < ids; ++id)
    for (int32_t c : h.kids(id))
      if (!h.is_leaf(c) && 2 * h.a(c) > h.a(id))
        throw std::logic_error("build_hierarchy: levels not separated");

  // Depth-first leaf order; descendant ranges become contiguous.
  h.depth.assign(ids, 0);
  h.desc_range.assign(ids - h.leaf_count, {0, 0});
  h.leaf_pos.assign(h.leaf_count, -1);
  std::vector<std::pair<int32_t, bool>> stack{{h.root, false}};
  while (!stack.empty()) {
    auto [id, done] = stack.back();
    stack.pop_back();
    if (h.is_leaf(id)) {
      h.leaf_pos[id] = static_cast<int32_t>(h.leaf_order.size());
      h.leaf_order.push_back(id);
      continue;
    }
    if (done) {
      h.desc_range[id - h.leaf_count].second =
          static_cast<int32_t>(h.leaf_order.size());
      continue;
    }
    h.desc_range[id - h.leaf_count].first =
        static_cast<int32_t>(h.leaf_order.size());
    stack.push_back({id, true});
    const auto& ch = h.kids(id);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
      h.depth[*it] = h.depth[id] + 1;
      stack.push_back({*it, false});
    }
  }
  compute_bounds(h);
  return h;
}

void compute_bounds(ComponentHierarchy& h) {
  int32_t vcount = static_cast<int32_t>(h.children.size());
  h.path_bound.assign(vcount, 0);
  h.bucket_count.assign(vcount, 0);
  // Children carry smaller ids than their parents, so id order is bottom-up.
  for (int32_t off = 0; off < vcount; ++off) {
    int32_t id = h.leaf_count + off;
    Wide a = h.level[off];
    Wide u = 3 * a * (Wide(h.children[off].size()) - 1);
    for (int32_t c : h.children[off])
      if (!h.is_leaf(c)) u += h.path_bound[c - h.leaf_count];
    h.path_bound[off] = u;
    h.bucket_count[off] = 1 + (u + a - 1) / a;
    (void)id;
  }
}

namespace {

// Bottleneck and shortest-path labels from `src` restricted to nodes whose
// leaf position lies in [lo, hi).
void restricted_labels(const Graph& g, const ComponentHierarchy& h,
                       int32_t src, int32_t lo, int32_t hi,
                       std::vector<Wide>* bneck, std::vector<Wide>* dist) {
  bneck->assign(g.node_count(), kWideInf);
  dist->assign(g.node_count(), kWideInf);
  auto inside = [&](int32_t v) {
    return h.leaf_pos[v] >= lo && h.leaf_pos[v] < hi;
  };
  using Entry = std::pair<Wide, int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  (*bneck)[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv != (*bneck)[v]) continue;
    for (const Arc& a : g.out(v)) {
      if (!inside(a.head)) continue;
      Wide nd = std::max(dv, a.cost);
      if (nd < (*bneck)[a.head]) {
        (*bneck)[a.head] = nd;
        pq.push({nd, a.head});
      }
    }
  }
  (*dist)[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv != (*dist)[v]) continue;
    for (const Arc& a : g.out(v)) {
      if (!inside(a.head)) continue;
      Wide nd = dv + a.cost;
      if (nd < (*dist)[a.head]) {
        (*dist)[a.head] = nd;
        pq.push({nd, a.head});
      }
    }
  }
}

}  // namespace

HierarchyReport validate_hierarchy(const ComponentHierarchy& h, const Graph& g,
                                   int64_t sample_pairs, uint64_t seed) {
  HierarchyReport rep;
  rep.eta_sum = h.eta_sum();
  int32_t n = g.node_count();
  if (rep.eta_sum >= 6 * Wide(n)) {
    rep.pass = false;
    rep.witness = "eta sum " + wide_str(rep.eta_sum) + " >= 6n";
    return rep;
  }
  if (n == 1 || h.children.empty()) return rep;

  bool exhaustive = n <= 64;
  std::mt19937_64 rng(seed);
  std::vector<Wide> bneck, dist;
  std::vector<std::vector<int32_t>> sampled(n);
  if (exhaustive) {
    for (int32_t i = 0; i < n; ++i)
      for (int32_t j = 0; j < n; ++j)
        if (i != j) sampled[i].push_back(j);
  } else {
    for (int64_t k = 0; k < sample_pairs; ++k) {
      int32_t i = static_cast<int32_t>(rng() % n);
      int32_t j = static_cast<int32_t>(rng() % n);
      if (i != j) sampled[i].push_back(j);
    }
  }
  auto global_b = bottleneck_matrix(g);
  for (int32_t i = 0; i < n; ++i) {
    if (sampled[i].empty()) continue;
    // Group targets by lca so each restricted run covers many pairs.
    std::sort(sampled[i].begin(), sampled[i].end(), [&](int32_t x, int32_t y) {
      return h.lca(i, x) < h.lca(i, y);
    });
    int32_t prev_lca = -1;
    for (int32_t j : sampled[i]) {
      int32_t v = h.lca(i, j);
      if (v != prev_lca) {
        auto [lo, hi] = h.range(v);
        restricted_labels(g, h, i, lo, hi, &bneck, &dist);
        prev_lca = v;
      }
      ++rep.pairs_checked;
      Wide a = h.a(v);
      Wide b = global_b[i][j];
      auto fail = [&](const std::string& what) {
        rep.pass = false;
        rep.witness = what + " at pair (" + std::to_string(i) + "," +
                      std::to_string(j) + "), lca level " + wide_str(a);
      };
      if (b < a || b > 3 * a) {
        fail("bottleneck outside [a, 3a]: b=" + wide_str(b));
        return rep;
      }
      if (bneck[j] != b) {
        fail("no bottleneck path inside the lca block: restricted=" +
             wide_str(bneck[j]) + " global=" + wide_str(b));
        return rep;
      }
      if (dist[j] > h.upper_bound_of(v)) {
        fail("shortest path inside block exceeds U: " + wide_str(dist[j]) +
             " > " + wide_str(h.upper_bound_of(v)));
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace balsp
