#pragma once

#include <cstdint>
#include <vector>

#include "balsp/wide.hpp"

namespace balsp {

// Union-find (path compression + union by size) extended with a subset-wide
// additive update. Each element carries a logical value
//   sigma(i) = sum of tau(j) over j on the path from i to its root,
// kept invariant across finds and unions; increase(i, d) adds d to sigma of
// every element in i's set.
class UnionFindIncrease {
 public:
  explicit UnionFindIncrease(int32_t n);

  int32_t size() const { return static_cast<int32_t>(parent_.size()); }
  int32_t find(int32_t i);
  void unite(int32_t i, int32_t j);
  void increase(int32_t i, Wide delta);
  Wide value(int32_t i);
  int64_t set_size(int32_t i);

  // Parent-link traversals performed so far (amortization diagnostics).
  int64_t link_traversals() const { return traversals_; }

 private:
  Wide sigma_of_root_path(int32_t i) const;

  std::vector<int32_t> parent_;  // parent_[i] == i at roots
  std::vector<Wide> tau_;
  std::vector<int64_t> size_;  // valid at roots only
  int64_t traversals_ = 0;
  std::vector<int32_t> path_;  // scratch
};

}  // namespace balsp
