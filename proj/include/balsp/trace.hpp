#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "balsp/wide.hpp"

namespace balsp {

// Replayable record of a contraction run. Ids 0..base_nodes-1 are the
// original nodes; every merge mints a fresh super-node id. Within one step,
// potential deltas apply to the ids live *before* that step's merges.
struct TraceMerge {
  std::vector<int32_t> members;  // >= 2 live ids
  int32_t super_id = -1;
};

struct TraceStep {
  int32_t iteration = 0;
  Wide threshold = 0;  // nondecreasing across steps
  std::vector<std::pair<int32_t, Wide>> potential_deltas;
  std::vector<TraceMerge> merges;
};

class ContractionTrace {
 public:
  explicit ContractionTrace(int32_t base_nodes)
      : base_nodes_(base_nodes), next_id_(base_nodes) {}
  ContractionTrace() = default;

  int32_t base_nodes() const { return base_nodes_; }
  int32_t id_count() const { return next_id_; }
  const std::vector<TraceStep>& steps() const { return steps_; }

  TraceStep& begin_step(int32_t iteration, Wide threshold);
  // Returns the fresh super-node id.
  int32_t record_merge(std::vector<int32_t> members);
  void record_delta(int32_t live_id, Wide delta);

  // True when the last merges left a single live root.
  bool complete() const;

 private:
  int32_t base_nodes_ = 0;
  int32_t next_id_ = 0;
  std::vector<TraceStep> steps_;
  int64_t live_count_ = 0;
};

// Composes all per-step potentials down to the original nodes by replaying
// merges in reverse: a node's total is its own deltas plus the deltas of
// every super-node that ever absorbed it. Work is linear in the trace size.
std::vector<Wide> compose_potential(const ContractionTrace& trace);

// Same, but only steps [0, step_count) are applied; used to audit
// incremental cost queries against a replay.
std::vector<Wide> compose_potential_prefix(const ContractionTrace& trace,
                                           size_t step_count);

}  // namespace balsp
