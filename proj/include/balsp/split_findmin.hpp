#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "balsp/wide.hpp"

namespace balsp {

// Weighted element sequence partitioned into consecutive subsequences.
// Splits insert boundaries, findmin reports the minimum key over an
// element's subsequence, decreasekey lowers one key. Backed by a range-min
// segment tree plus a boundary set: every operation is O(log n).
class SplitFindMin {
 public:
  explicit SplitFindMin(int32_t n);

  int32_t size() const { return n_; }
  // Starts the subsequence (e, ..) by cutting before e; splitting at the
  // first element of its subsequence is a no-op.
  void split(int32_t e);
  Wide findmin(int32_t e) const;
  void decreasekey(int32_t e, Wide w);  // key(e) = min(key(e), w)
  Wide key(int32_t e) const { return tree_[size_ + e]; }
  // First element of e's current subsequence (a stable interval handle).
  int32_t seq_begin(int32_t e) const;
  int32_t seq_end(int32_t e) const;  // one past the last element
  int64_t op_count() const { return ops_; }

 private:
  Wide range_min(int32_t lo, int32_t hi) const;  // [lo, hi)

  int32_t n_ = 0;
  int32_t size_ = 1;  // power-of-two leaf count
  std::vector<Wide> tree_;
  std::set<int32_t> bounds_;  // subsequence starts; contains 0 and n
  mutable int64_t ops_ = 0;
};

}  // namespace balsp
