#include "balsp/preprocess.hpp"

#include <algorithm>
#include <stdexcept>

#include "balsp/scc.hpp"

namespace balsp {

AugmentResult make_strongly_connected(const Graph& g) {
  SccResult sc = strongly_connected(g.node_count(), g.arcs());
  AugmentResult res;
  res.big_cost = g.cost_sum() + 1;
  if (sc.count == 1) {
    res.graph = g;
    return res;
  }
  int32_t k = sc.count;
  std::vector<uint8_t> has_in(k, 0), has_out(k, 0);
  for (const Arc& a : g.arcs()) {
    int32_t ct = sc.comp[a.tail], ch = sc.comp[a.head];
    if (ct != ch) {
      has_out[ct] = 1;
      has_in[ch] = 1;
    }
  }
  std::vector<int32_t> comp_min(k, INT32_MAX);
  for (int32_t v = 0; v < g.node_count(); ++v)
    comp_min[sc.comp[v]] = std::min(comp_min[sc.comp[v]], v);

  // Condensation adjacency for the downstream walk to a sink.
  std::vector<std::vector<int32_t>> cadj(k);
  for (const Arc& a : g.arcs()) {
    int32_t ct = sc.comp[a.tail], ch = sc.comp[a.head];
    if (ct != ch) cadj[ct].push_back(ch);
  }
  for (auto& v : cadj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  // s0 sits in the first source component; t0 in a sink reachable from it,
  // found by always following the smallest-id successor.
  int32_t src_comp = -1;
  for (int32_t c = 0; c < k && src_comp < 0; ++c)
    if (!has_in[c]) src_comp = c;
  int32_t sink_comp = src_comp;
  while (has_out[sink_comp]) sink_comp = cadj[sink_comp].front();
  int32_t s0 = comp_min[src_comp];
  int32_t t0 = comp_min[sink_comp];

  std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
  auto add = [&](int32_t t, int32_t h) {
    if (t == h) return;
    res.added.push_back({t, h, res.big_cost});
    arcs.push_back({t, h, res.big_cost});
  };
  for (int32_t c = 0; c < k; ++c) {
    if (!has_in[c] && c != sink_comp) add(t0, comp_min[c]);
    if (!has_out[c] && c != src_comp) add(comp_min[c], s0);
  }
  res.graph = Graph(g.node_count(), std::move(arcs));
  if (!is_strongly_connected(res.graph))
    throw std::logic_error("make_strongly_connected: augmentation failed");
  return res;
}

PositivizeResult positivize(const Graph& g) {
  if (!is_strongly_connected(g))
    throw std::invalid_argument("positivize: input must be strongly connected");
  // Components of the zero-cost subgraph, in topological order of zero arcs.
  std::vector<Arc> zero_arcs;
  for (const Arc& a : g.arcs())
    if (a.cost == 0) zero_arcs.push_back(a);
  SccResult sc = strongly_connected(g.node_count(), zero_arcs);

  PositivizeResult res;
  res.node_class = sc.comp;
  int32_t k = sc.count;
  Wide n = 1;
  while (n < k) n <<= 1;
  res.n_pow2 = n;

  // pi(class i) = -(i+1)/n; stored as numerators over scale n. Every zero
  // arc crosses classes forward, so n*c^pi is a positive integer throughout.
  res.pot.scale = n;
  res.pot.values.resize(g.node_count());
  for (int32_t v = 0; v < g.node_count(); ++v)
    res.pot.values[v] = -Wide(sc.comp[v] + 1);

  std::vector<Arc> arcs;
  arcs.reserve(g.arc_count());
  for (const Arc& a : g.arcs()) {
    int32_t ct = sc.comp[a.tail], ch = sc.comp[a.head];
    // Arcs inside a zero component are dominated by its internal zero paths.
    if (ct == ch) continue;
    Wide c = n * a.cost + res.pot.values[a.tail] - res.pot.values[a.head];
    if (c < 1) throw std::logic_error("positivize: nonpositive output cost");
    arcs.push_back({ct, ch, c});
  }
  res.graph = Graph(std::max<int32_t>(k, 1), std::move(arcs));
  return res;
}

}  // namespace balsp
