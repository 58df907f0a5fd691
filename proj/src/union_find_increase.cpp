#include "balsp/union_find_increase.hpp"

#include <stdexcept>

namespace balsp {

UnionFindIncrease::UnionFindIncrease(int32_t n) {
  if (n < 1) throw std::invalid_argument("union_find_increase: n must be >= 1");
  parent_.resize(n);
  for (int32_t i = 0; i < n; ++i) parent_[i] = i;
  tau_.assign(n, 0);
  size_.assign(n, 1);
}

int32_t UnionFindIncrease::find(int32_t i) {
  // Collect the root path, then repoint every node at the root, rewriting
  // tau so each sigma is unchanged: afterwards sigma(j) = tau(j) + tau(root).
  path_.clear();
  int32_t v = i;
  while (parent_[v] != v) {
    path_.push_back(v);
    v = parent_[v];
    ++traversals_;
  }
  Wide sigma = tau_[v];  // running sigma, top of the path first
  for (size_t k = path_.size(); k-- > 0;) {
    int32_t j = path_[k];
    sigma += tau_[j];           // sigma(j) under the old links
    tau_[j] = sigma - tau_[v];  // so that tau(j) + tau(root) == sigma(j)
    parent_[j] = v;
  }
  return v;
}

void UnionFindIncrease::unite(int32_t i, int32_t j) {
  int32_t v = find(i), w = find(j);
  if (v == w) return;
  if (size_[v] > size_[w] || (size_[v] == size_[w] && v < w)) std::swap(v, w);
  // v is absorbed under w.
  int64_t total = size_[v] + size_[w];
  size_[v] = 0;
  size_[w] = total;
  tau_[v] -= tau_[w];  // keeps sigma of v's subtree intact
  parent_[v] = w;
}

void UnionFindIncrease::increase(int32_t i, Wide delta) {
  int32_t v = find(i);
  tau_[v] += delta;
}

Wide UnionFindIncrease::value(int32_t i) {
  int32_t v = find(i);
  if (v == i) return tau_[i];
  return tau_[i] + tau_[v];
}

int64_t UnionFindIncrease::set_size(int32_t i) { return size_[find(i)]; }

}  // namespace balsp
