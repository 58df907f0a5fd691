#include "balsp/split_findmin.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

using namespace balsp;

namespace {

// Reference: explicit interval list with linear scans.
struct NaiveSfm {
  std::vector<Wide> key;
  std::vector<int32_t> start;  // start[i] = first element of i's interval
  explicit NaiveSfm(int32_t n) : key(n, kWideInf), start(n, 0) {}
  void split(int32_t e) {
    if (e == 0) return;
    int32_t s = start[e];
    for (size_t i = e; i < start.size() && start[i] == s; ++i)
      start[i] = e;
  }
  Wide findmin(int32_t e) const {
    Wide best = kWideInf;
    int32_t s = start[e];
    for (size_t i = s; i < start.size() && start[i] == s; ++i)
      best = std::min(best, key[i]);
    return best;
  }
  void decreasekey(int32_t e, Wide w) { key[e] = std::min(key[e], w); }
};

}  // namespace

TEST_CASE("split_findmin worked sequence") {
  SplitFindMin s(4);
  s.decreasekey(1, 7);
  CHECK(s.findmin(2) == 7);
  s.split(2);
  CHECK(s.findmin(0) == 7);
  CHECK(s.findmin(3) == kWideInf);
  s.decreasekey(1, 9);  // decrease only
  CHECK(s.key(1) == 7);
  s.split(0);  // splitting at the first element is a no-op
  CHECK(s.findmin(1) == 7);
}

TEST_CASE("split_findmin differential oracle") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(31 * seed + 7);
    int32_t n = 2 + int32_t(rng() % 300);
    SplitFindMin s(n);
    NaiveSfm ref(n);
    for (int op = 0; op < 2000; ++op) {
      int32_t e = int32_t(rng() % n);
      switch (rng() % 3) {
        case 0:
          s.split(e);
          ref.split(e);
          break;
        case 1: {
          Wide w = Wide(rng() % 100000);
          s.decreasekey(e, w);
          ref.decreasekey(e, w);
          break;
        }
        default:
          CHECK(s.findmin(e) == ref.findmin(e));
      }
      int32_t probe = int32_t(rng() % n);
      CHECK(s.findmin(probe) == ref.findmin(probe));
      CHECK(s.seq_begin(probe) == ref.start[probe]);
    }
  }
}
