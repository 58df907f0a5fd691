#include "balsp/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace balsp {

Graph::Graph(int32_t node_count, std::vector<Arc> arcs, int64_t* dropped)
    : n_(node_count), arcs_(std::move(arcs)) {
  if (n_ < 1) throw std::invalid_argument("graph: node count must be >= 1");
  for (const Arc& a : arcs_) {
    if (a.tail < 0 || a.tail >= n_ || a.head < 0 || a.head >= n_)
      throw std::invalid_argument("graph: arc endpoint out of range");
    if (a.tail == a.head) throw std::invalid_argument("graph: loops not allowed");
    if (a.cost < 0) throw std::invalid_argument("graph: negative cost");
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) {
    if (x.tail != y.tail) return x.tail < y.tail;
    if (x.head != y.head) return x.head < y.head;
    return x.cost < y.cost;
  });
  int64_t removed = 0;
  size_t w = 0;
  for (size_t r = 0; r < arcs_.size(); ++r) {
    if (w > 0 && arcs_[w - 1].tail == arcs_[r].tail &&
        arcs_[w - 1].head == arcs_[r].head) {
      ++removed;  // sorted by cost within the pair, keep the first
      continue;
    }
    arcs_[w++] = arcs_[r];
  }
  arcs_.resize(w);
  if (dropped) *dropped = removed;

  first_.assign(n_ + 1, 0);
  for (const Arc& a : arcs_) ++first_[a.tail + 1];
  for (int32_t v = 0; v < n_; ++v) first_[v + 1] += first_[v];
}

Wide Graph::cost_sum() const {
  Wide s = 0;
  for (const Arc& a : arcs_) s += a.cost;
  return s;
}

Wide Graph::max_cost() const {
  Wide m = 0;
  for (const Arc& a : arcs_) m = std::max(m, a.cost);
  return m;
}

Wide Graph::min_cost() const {
  Wide m = kWideInf;
  for (const Arc& a : arcs_) m = std::min(m, a.cost);
  return m;
}

Partition partition_from_classes(const std::vector<int32_t>& raw) {
  int32_t n = static_cast<int32_t>(raw.size());
  int32_t hi = 0;
  for (int32_t c : raw) hi = std::max(hi, c + 1);
  std::vector<int32_t> smallest(hi, -1);
  for (int32_t v = n - 1; v >= 0; --v) smallest[raw[v]] = v;
  std::vector<int32_t> order;
  for (int32_t c = 0; c < hi; ++c)
    if (smallest[c] >= 0) order.push_back(c);
  std::sort(order.begin(), order.end(),
            [&](int32_t a, int32_t b) { return smallest[a] < smallest[b]; });
  std::vector<int32_t> renum(hi, -1);
  for (size_t i = 0; i < order.size(); ++i)
    renum[order[i]] = static_cast<int32_t>(i);
  Partition p;
  p.count = static_cast<int32_t>(order.size());
  p.cls.resize(n);
  for (int32_t v = 0; v < n; ++v) p.cls[v] = renum[raw[v]];
  return p;
}

Graph contract(const Graph& g, const Partition& p,
               std::vector<int32_t>* arc_image) {
  if (static_cast<int32_t>(p.cls.size()) != g.node_count())
    throw std::invalid_argument("contract: partition size mismatch");
  std::vector<Arc> kept;
  kept.reserve(g.arc_count());
  for (const Arc& a : g.arcs()) {
    int32_t ct = p.cls[a.tail], ch = p.cls[a.head];
    if (ct != ch) kept.push_back({ct, ch, a.cost});
  }
  Graph h(p.count, std::move(kept));  // sorts and min-dedups
  if (arc_image) {
    arc_image->assign(g.arc_count(), -1);
    auto image_id = [&](int32_t t, int32_t hd) {
      auto [lo, hi] = h.out_range(t);
      auto* base = h.arcs().data();
      auto* it = std::lower_bound(base + lo, base + hi, hd,
                                  [](const Arc& a, int32_t key) { return a.head < key; });
      return static_cast<int32_t>(it - base);
    };
    for (int32_t e = 0; e < g.arc_count(); ++e) {
      const Arc& a = g.arc(e);
      int32_t ct = p.cls[a.tail], ch = p.cls[a.head];
      if (ct != ch) (*arc_image)[e] = image_id(ct, ch);
    }
  }
  return h;
}

Wide reduced_cost(const Graph& g, const Potential& pi, int32_t arc_id) {
  const Arc& a = g.arc(arc_id);
  return pi.scale * a.cost + pi.values[a.tail] - pi.values[a.head];
}

std::vector<Wide> reduced_costs(const Graph& g, const Potential& pi) {
  std::vector<Wide> out(g.arc_count());
  for (int32_t e = 0; e < g.arc_count(); ++e) out[e] = reduced_cost(g, pi, e);
  return out;
}

Graph with_costs(const Graph& g, std::span<const Wide> costs) {
  std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
  for (size_t e = 0; e < arcs.size(); ++e) arcs[e].cost = costs[e];
  return Graph(g.node_count(), std::move(arcs));
}

}  // namespace balsp
