#include "balsp/split_findmin.hpp"

#include <stdexcept>

namespace balsp {

SplitFindMin::SplitFindMin(int32_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("split_findmin: n must be >= 1");
  while (size_ < n_) size_ <<= 1;
  tree_.assign(2 * size_, kWideInf);
  bounds_.insert(0);
  bounds_.insert(n_);
}

void SplitFindMin::split(int32_t e) {
  ++ops_;
  bounds_.insert(e);
}

int32_t SplitFindMin::seq_begin(int32_t e) const {
  auto it = bounds_.upper_bound(e);
  return *std::prev(it);
}

int32_t SplitFindMin::seq_end(int32_t e) const {
  return *bounds_.upper_bound(e);
}

Wide SplitFindMin::range_min(int32_t lo, int32_t hi) const {
  Wide best = kWideInf;
  for (lo += size_, hi += size_; lo < hi; lo >>= 1, hi >>= 1) {
    if (lo & 1) best = std::min(best, tree_[lo++]);
    if (hi & 1) best = std::min(best, tree_[--hi]);
  }
  return best;
}

Wide SplitFindMin::findmin(int32_t e) const {
  ++ops_;
  return range_min(seq_begin(e), seq_end(e));
}

void SplitFindMin::decreasekey(int32_t e, Wide w) {
  ++ops_;
  int32_t i = size_ + e;
  if (w >= tree_[i]) return;
  tree_[i] = w;
  for (i >>= 1; i >= 1; i >>= 1)
    tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
}

}  // namespace balsp
