#include "balsp/scc.hpp"

#include <algorithm>

namespace balsp {
namespace {

// Core over CSR adjacency (heads + first index).
SccResult tarjan(int32_t n, const std::vector<int32_t>& heads,
                 const std::vector<int32_t>& first) {
  SccResult res;
  res.comp.assign(n, -1);
  std::vector<int32_t> num(n, -1), low(n, 0);
  std::vector<int32_t> stack, frame_v, frame_it;
  stack.reserve(n);
  std::vector<uint8_t> on_stack(n, 0);
  int32_t timer = 0, comps = 0;

  for (int32_t root = 0; root < n; ++root) {
    if (num[root] != -1) continue;
    frame_v.push_back(root);
    frame_it.push_back(first[root]);
    num[root] = low[root] = timer++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frame_v.empty()) {
      int32_t v = frame_v.back();
      if (frame_it.back() < first[v + 1]) {
        int32_t w = heads[frame_it.back()++];
        if (num[w] == -1) {
          num[w] = low[w] = timer++;
          stack.push_back(w);
          on_stack[w] = 1;
          frame_v.push_back(w);
          frame_it.push_back(first[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          while (true) {
            int32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            res.comp[w] = comps;
            if (w == v) break;
          }
          ++comps;
        }
        frame_v.pop_back();
        frame_it.pop_back();
        if (!frame_v.empty()) {
          int32_t parent = frame_v.back();
          low[parent] = std::min(low[parent], low[v]);
        }
      }
    }
  }
  // Tarjan emits components in reverse topological order.
  res.count = comps;
  for (int32_t v = 0; v < n; ++v) res.comp[v] = comps - 1 - res.comp[v];
  return res;
}

template <class GetTail, class GetHead>
SccResult run(int32_t n, size_t m, GetTail tail, GetHead head) {
  std::vector<int32_t> first(n + 1, 0);
  for (size_t e = 0; e < m; ++e) ++first[tail(e) + 1];
  for (int32_t v = 0; v < n; ++v) first[v + 1] += first[v];
  std::vector<int32_t> heads(m);
  std::vector<int32_t> cursor(first.begin(), first.end() - 1);
  for (size_t e = 0; e < m; ++e) heads[cursor[tail(e)]++] = head(e);
  return tarjan(n, heads, first);
}

}  // namespace

SccResult strongly_connected(int32_t n, std::span<const Arc> arcs) {
  return run(
      n, arcs.size(), [&](size_t e) { return arcs[e].tail; },
      [&](size_t e) { return arcs[e].head; });
}

SccResult strongly_connected(
    int32_t n, std::span<const std::pair<int32_t, int32_t>> arcs) {
  return run(
      n, arcs.size(), [&](size_t e) { return arcs[e].first; },
      [&](size_t e) { return arcs[e].second; });
}

std::vector<std::vector<int32_t>> scc_components(const Graph& g) {
  SccResult r = strongly_connected(g.node_count(), g.arcs());
  std::vector<std::vector<int32_t>> out(r.count);
  for (int32_t v = 0; v < g.node_count(); ++v) out[r.comp[v]].push_back(v);
  return out;
}

bool is_strongly_connected(const Graph& g) {
  return strongly_connected(g.node_count(), g.arcs()).count == 1;
}

}  // namespace balsp
