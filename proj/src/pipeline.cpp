#include "balsp/pipeline.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "balsp/balance.hpp"
#include "balsp/preprocess.hpp"
#include "balsp/scc.hpp"

namespace balsp {
namespace {

// Every scaled quantity must stay far inside 128 bits: the worst products
// chain M by n (positivize), 3n^2 (rough balancing), 2^rho (prescale), and
// another n for potentials and path sums.
void preflight(const Graph& g, const PipelineOptions& opt) {
  if (g.node_count() > opt.limits.max_nodes)
    throw std::invalid_argument("pipeline: node count exceeds the limit");
  for (const Arc& a : g.arcs())
    if (a.cost > opt.limits.max_cost)
      throw std::invalid_argument("pipeline: cost exceeds the ceiling");
  Wide m_total = g.cost_sum() + 2;
  int bits = msb_index(m_total) + 4 * (msb_index(Wide(g.node_count()) + 1) + 1) +
             opt.rho + 12;
  if (bits >= 120)
    throw std::invalid_argument("pipeline: scaled quantities would overflow");
}

}  // namespace

Wide Pipeline::to_original(Wide reduced_dist, int32_t src_red,
                           int32_t dst_red) const {
  Wide shifted = reduced_dist - node_potential[src_red] + node_potential[dst_red];
  if (shifted % scale != 0)
    throw std::logic_error("pipeline: distance not divisible by the scale");
  return shifted / scale;
}

Pipeline build_pipeline(const Graph& g, const PipelineOptions& opt) {
  if (opt.want_hierarchy && opt.rho != 0)
    throw std::invalid_argument("pipeline: the hierarchy requires rho = 0");
  preflight(g, opt);
  Pipeline p;
  p.input = g;

  AugmentResult aug = make_strongly_connected(g);
  p.augmented = std::move(aug.graph);
  p.big_cost = aug.big_cost;
  p.arcs_added = !aug.added.empty();

  PositivizeResult pos = positivize(p.augmented);
  p.node_class = std::move(pos.node_class);
  p.n_pow2 = pos.n_pow2;

  RoughBalanceOptions ropt;
  ropt.check_invariants = opt.check_invariants;
  RoughBalanceResult rough = rough_balance(pos.graph, ropt);
  p.rough_iterations = rough.iterations;
  Graph mid = with_costs(pos.graph, reduced_costs(pos.graph, rough.pot));

  MinBalanceOptions mopt;
  mopt.rho = opt.rho;
  mopt.check_invariants = opt.check_invariants;
  mopt.precheck_balanced = opt.precheck_balanced;
  MinBalanceResult mb = min_balance(mid, mopt);
  p.balance_stats = mb.stats;
  p.reduced = with_costs(mid, reduced_costs(mid, mb.pot));

  // Composed potential over reduced nodes:
  //   scale = n * 3n^2 * 2^rho,
  //   pot   = 3n^2 * 2^rho * pos + 2^rho * rough + balance.
  Wide rho_pow = Wide(1) << opt.rho;
  Wide three_n2 = 3 * p.n_pow2 * p.n_pow2;
  p.scale = p.n_pow2 * three_n2 * rho_pow;
  int32_t rn = p.reduced.node_count();
  p.node_potential.assign(rn, 0);
  // positivize stores one value per *input* node; all members of a class
  // share it, so read it through any representative.
  std::vector<Wide> pos_value(rn, 0);
  for (int32_t v = 0; v < p.augmented.node_count(); ++v)
    pos_value[p.node_class[v]] = pos.pot.values[v];
  for (int32_t c = 0; c < rn; ++c)
    p.node_potential[c] = three_n2 * rho_pow * pos_value[c] +
                          rho_pow * rough.pot.values[c] + mb.pot.values[c];

  if (opt.check_invariants) {
    for (int32_t e = 0; e < p.augmented.arc_count(); ++e) {
      const Arc& a = p.augmented.arc(e);
      int32_t ct = p.node_class[a.tail], ch = p.node_class[a.head];
      if (ct == ch) continue;
      Wide want = p.scale * a.cost + p.node_potential[ct] - p.node_potential[ch];
      // The reduced graph keeps the minimum over parallel images.
      bool found = false;
      for (const Arc& r : p.reduced.out(ct))
        if (r.head == ch && r.cost <= want) found = true;
      if (!found)
        throw std::logic_error("pipeline: potential composition broke an arc");
    }
  }

  if (opt.want_hierarchy) {
    p.hierarchy = build_hierarchy(mb.trace, opt.rho);
    p.has_hierarchy = true;
  }
  return p;
}

std::vector<Wide> query_distances(const Pipeline& p, const SsspEngine& engine,
                                  int32_t source, const SsspOptions& opt,
                                  SsspStats* stats) {
  int32_t n = p.input.node_count();
  if (source < 0 || source >= n)
    throw std::invalid_argument("query: source out of range");
  int32_t src_red = p.reduced_node(source);
  SsspResult res = engine.run(src_red, opt);
  if (stats) *stats = res.stats;
  std::vector<Wide> out(n);
  for (int32_t v = 0; v < n; ++v) {
    int32_t red = p.reduced_node(v);
    Wide d = red == src_red ? 0 : p.to_original(res.dist[red], src_red, red);
    out[v] = p.beyond_reach(d) ? kWideInf : d;
  }
  return out;
}

void all_pairs(const Pipeline& p,
               const std::function<void(int32_t, const std::vector<Wide>&)>& sink,
               const SsspOptions& opt) {
  SsspEngine engine(p.reduced, p.hierarchy);
  for (int32_t s = 0; s < p.input.node_count(); ++s)
    sink(s, query_distances(p, engine, s, opt));
}

std::vector<std::vector<Wide>> all_pairs_matrix(const Pipeline& p,
                                                int32_t threads,
                                                const SsspOptions& opt) {
  int32_t n = p.input.node_count();
  std::vector<std::vector<Wide>> matrix(n);
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    all_pairs(p, [&](int32_t s, const std::vector<Wide>& row) { matrix[s] = row; },
              opt);
    return matrix;
  }
  std::atomic<int32_t> next{0};
  auto worker = [&] {
    SsspEngine engine(p.reduced, p.hierarchy);
    while (true) {
      int32_t s = next.fetch_add(1);
      if (s >= n) break;
      matrix[s] = query_distances(p, engine, s, opt);
    }
  };
  std::vector<std::thread> pool;
  for (int32_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return matrix;
}

}  // namespace balsp
