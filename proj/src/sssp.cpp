#include "balsp/sssp.hpp"

#include <map>
#include <stdexcept>

#include "balsp/split_findmin.hpp"

namespace balsp {
namespace {

// Per-query state. Ids follow the hierarchy: nodes 0..n-1, vertices above.
struct Query {
  const Graph& g;
  const ComponentHierarchy& h;
  const SsspOptions& opt;
  SsspStats stats;

  int32_t n;
  std::vector<Wide> dist_node;
  std::vector<int32_t> pred;
  std::vector<uint8_t> permanent;  // per id
  std::vector<uint8_t> active;    // per vertex id

  // One bucket table per active vertex. Children live in intrusive lists,
  // nodes separated from vertices so nodes are always selected first.
  struct Bucket {
    int32_t node_head = -1, node_tail = -1;
    int32_t vert_head = -1, vert_tail = -1;
  };
  struct Table {
    Wide lb0 = 0;      // LB of the first bucket
    int32_t log_a = 0; // a(v) = 1 << log_a
    int32_t count = 0; // eta(v)
    int32_t current = 0;
    Wide upper = 0;
    int32_t first_bucket = 0;  // index into the shared bucket pool
  };
  std::vector<Table> table;    // per vertex offset
  std::vector<Bucket> pool;
  std::vector<int32_t> child_prev, child_next, child_bucket;  // per id
  std::vector<Wide> dist_vertex;  // valid while active: LB(CurrentB)

  SplitFindMin sfm;
  std::map<int32_t, int32_t> owner;  // interval start -> owning child id

  int32_t cv = -1;

  Query(const Graph& graph, const ComponentHierarchy& hier,
        const SsspOptions& options)
      : g(graph),
        h(hier),
        opt(options),
        n(graph.node_count()),
        sfm(graph.node_count()) {
    int32_t ids = h.id_count();
    dist_node.assign(n, kWideInf);
    pred.assign(n, -1);
    permanent.assign(ids, 0);
    active.assign(ids, 0);
    table.resize(h.children.size());
    child_prev.assign(ids, -1);
    child_next.assign(ids, -1);
    child_bucket.assign(ids, -1);
    dist_vertex.assign(ids, kWideInf);
  }

  void unlink(int32_t j) {
    int32_t v = h.parent[j];
    Table& tb = table[v - n];
    Bucket& b = pool[tb.first_bucket + child_bucket[j]];
    bool is_node = h.is_leaf(j);
    int32_t& head = is_node ? b.node_head : b.vert_head;
    int32_t& tail = is_node ? b.node_tail : b.vert_tail;
    if (child_prev[j] != -1)
      child_next[child_prev[j]] = child_next[j];
    else
      head = child_next[j];
    if (child_next[j] != -1)
      child_prev[child_next[j]] = child_prev[j];
    else
      tail = child_prev[j];
    child_prev[j] = child_next[j] = -1;
    child_bucket[j] = -1;
  }

  void link(int32_t j, int32_t k) {
    int32_t v = h.parent[j];
    Bucket& b = pool[table[v - n].first_bucket + k];
    bool is_node = h.is_leaf(j);
    int32_t& head = is_node ? b.node_head : b.vert_head;
    int32_t& tail = is_node ? b.node_tail : b.vert_tail;
    child_bucket[j] = k;
    child_prev[j] = tail;
    child_next[j] = -1;
    if (tail != -1)
      child_next[tail] = j;
    else
      head = j;
    tail = j;
  }

  // Places child j of its (active) parent by label; out-of-range labels
  // leave the child where it is.
  void move_to_bucket(int32_t j, Wide label) {
    int32_t v = h.parent[j];
    Table& tb = table[v - n];
    if (label < tb.lb0 || label >= tb.upper) return;
    int32_t k = static_cast<int32_t>((label - tb.lb0) >> tb.log_a);
    if (child_bucket[j] == k) return;
    ++stats.bucket_moves;
    if (child_bucket[j] != -1) unlink(j);
    link(j, k);
  }

  void activate(int32_t v) {
    ++stats.activations;
    active[v] = 1;
    auto [lo, hi] = h.range(v);
    (void)hi;
    Wide dv = sfm.findmin(lo);
    Wide a = h.a(v);
    int32_t log_a = msb_index(a);
    Wide lambda = (dv >> log_a) << log_a;
    Table& tb = table[v - n];
    tb.log_a = log_a;
    tb.count = static_cast<int32_t>(h.eta(v));
    tb.current = 0;
    tb.lb0 = lambda;
    tb.upper = lambda + Wide(tb.count) * a;
    tb.first_bucket = static_cast<int32_t>(pool.size());
    pool.resize(pool.size() + tb.count);
    dist_vertex[v] = lambda;

    // Split the interval into one piece per child and hand over ownership.
    const auto& ch = h.kids(v);
    for (size_t i = 0; i < ch.size(); ++i) {
      auto [clo, chi] = h.range(ch[i]);
      (void)chi;
      if (i > 0) sfm.split(clo);
      owner[clo] = ch[i];
    }
    for (int32_t c : ch) {
      if (h.is_leaf(c)) {
        if (dist_node[c] < kWideInf) move_to_bucket(c, dist_node[c]);
      } else {
        Wide dc = sfm.findmin(h.range(c).first);
        if (dc < kWideInf) move_to_bucket(c, dc);
      }
    }
  }

  void update(int32_t i) {
    Wide di = dist_node[i];
    for (const Arc& arc : g.out(i)) {
      ++stats.relaxations;
      int32_t j = arc.head;
      Wide nd = di + arc.cost;
      if (nd >= dist_node[j]) continue;
      if (opt.check_invariants && permanent[j])
        throw std::logic_error("sssp: permanent label improved");
      ++stats.improvements;
      dist_node[j] = nd;
      pred[j] = i;
      sfm.decreasekey(h.leaf_pos[j], nd);
      int32_t p = h.parent[j];
      if (p != -1 && active[p]) {
        move_to_bucket(j, nd);
      } else if (p != -1) {
        // Greatest inactive ancestor: the owner of j's interval.
        auto it = owner.upper_bound(h.leaf_pos[j]);
        int32_t w = std::prev(it)->second;
        Wide dw = sfm.findmin(h.leaf_pos[j]);
        move_to_bucket(w, dw);
      }
    }
  }

  void make_permanent_node(int32_t i) {
    permanent[i] = 1;
    if (opt.bottleneck_audit) {
      const auto& b = *opt.bottleneck_audit;
      for (int32_t x = 0; x < n; ++x) {
        if (permanent[x] || dist_node[x] >= kWideInf) continue;
        if (dist_node[i] > dist_node[x] + b[x][i])
          throw std::logic_error("sssp: selection rule violated");
      }
    }
    update(i);
  }

  void main_step() {
    ++stats.main_calls;
    int32_t v = cv;
    Table& tb = table[v - n];
    Bucket& b = pool[tb.first_bucket + tb.current];
    if (b.node_head != -1) {
      ++stats.picked_nodes;
      int32_t i = b.node_head;
      unlink(i);
      make_permanent_node(i);
      return;
    }
    if (b.vert_head != -1) {
      ++stats.descended;
      int32_t w = b.vert_head;
      cv = w;
      if (!active[w]) activate(w);
      return;
    }
    ++stats.emptied;
    dist_vertex[v] += Wide(1) << tb.log_a;
    if (dist_vertex[v] == tb.upper && v != h.root) {
      permanent[v] = 1;
      if (child_bucket[v] != -1) unlink(v);
      cv = h.parent[v];
      if (opt.check_invariants)
        for (int32_t c : h.kids(v))
          if (!permanent[c])
            throw std::logic_error("sssp: vertex finished with open children");
    }
    if (dist_vertex[v] < tb.upper) {
      ++tb.current;
      if (v != h.root) {
        int32_t p = h.parent[v];
        Table& pt = table[p - n];
        if (dist_vertex[v] >= dist_vertex[p] + (Wide(1) << pt.log_a)) {
          if (child_bucket[v] != -1) unlink(v);
          int32_t target = pt.current + 1;
          if (target >= pt.count)
            throw std::logic_error("sssp: no next bucket at the parent");
          link(v, target);
          cv = p;
        }
      }
    }
  }

  void check_active_sandwich() {
    for (int32_t w = n; w < h.id_count(); ++w) {
      if (!active[w] || permanent[w]) continue;
      for (int32_t v = h.parent[w]; v != -1; v = h.parent[v]) {
        if (!active[v] || permanent[v]) continue;
        if (dist_vertex[v] > dist_vertex[w] ||
            dist_vertex[w] > dist_vertex[v] + h.a(v))
          throw std::logic_error("sssp: active labels left their window");
      }
    }
  }

  SsspResult run(int32_t s) {
    SsspResult res;
    if (n == 1) {
      res.dist = {0};
      res.pred = {-1};
      return res;
    }
    dist_node[s] = 0;
    sfm.decreasekey(h.leaf_pos[s], 0);
    owner[0] = h.root;
    activate(h.root);
    cv = h.root;
    int64_t cap = 0;
    for (Wide e : h.bucket_count) cap += static_cast<int64_t>(e);
    cap = 64 * (cap + n) + 64;
    while (dist_vertex[h.root] < table[h.root - n].upper) {
      main_step();
      if (opt.check_invariants) check_active_sandwich();
      if (stats.main_calls > cap)
        throw std::logic_error("sssp: main loop budget exceeded");
    }
    if (opt.check_invariants) {
      for (int32_t i = 0; i < n; ++i) {
        // Every label is final and below every activated ancestor's bound.
        if (!permanent[i]) throw std::logic_error("sssp: node left temporary");
        for (int32_t v = h.parent[i]; v != -1; v = h.parent[v])
          if (dist_node[i] >= table[v - n].upper)
            throw std::logic_error("sssp: distance reached an ancestor bound");
      }
    }
    stats.sfm_ops = sfm.op_count();
    res.dist = std::move(dist_node);
    res.pred = std::move(pred);
    res.stats = stats;
    return res;
  }
};

}  // namespace

SsspEngine::SsspEngine(const Graph& g, const ComponentHierarchy& h)
    : g_(g), h_(h) {
  if (g.node_count() != h.leaf_count)
    throw std::invalid_argument("sssp: hierarchy does not match the graph");
}

SsspResult SsspEngine::run(int32_t source, const SsspOptions& opt) const {
  if (source < 0 || source >= g_.node_count())
    throw std::invalid_argument("sssp: source out of range");
  Query q(g_, h_, opt);
  return q.run(source);
}

}  // namespace balsp
