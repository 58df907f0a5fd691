#include "balsp/trace.hpp"

#include <stdexcept>

namespace balsp {

TraceStep& ContractionTrace::begin_step(int32_t iteration, Wide threshold) {
  if (!steps_.empty() && steps_.back().threshold > threshold)
    throw std::logic_error("trace: thresholds must be nondecreasing");
  if (steps_.empty()) live_count_ = base_nodes_;
  steps_.push_back(TraceStep{iteration, threshold, {}, {}});
  return steps_.back();
}

int32_t ContractionTrace::record_merge(std::vector<int32_t> members) {
  if (steps_.empty()) throw std::logic_error("trace: no open step");
  if (members.size() < 2) throw std::logic_error("trace: merge needs >= 2 members");
  int32_t id = next_id_++;
  live_count_ -= static_cast<int64_t>(members.size()) - 1;
  steps_.back().merges.push_back(TraceMerge{std::move(members), id});
  return id;
}

void ContractionTrace::record_delta(int32_t live_id, Wide delta) {
  if (steps_.empty()) throw std::logic_error("trace: no open step");
  steps_.back().potential_deltas.emplace_back(live_id, delta);
}

bool ContractionTrace::complete() const {
  if (base_nodes_ == 1) return true;
  return !steps_.empty() && live_count_ == 1;
}

std::vector<Wide> compose_potential_prefix(const ContractionTrace& trace,
                                           size_t step_count) {
  if (step_count > trace.steps().size())
    throw std::invalid_argument("trace: prefix too long");
  std::vector<Wide> pot(trace.id_count(), 0);
  for (size_t s = step_count; s-- > 0;) {
    const TraceStep& step = trace.steps()[s];
    for (size_t m = step.merges.size(); m-- > 0;) {
      const TraceMerge& mg = step.merges[m];
      for (int32_t v : mg.members) pot[v] += pot[mg.super_id];
    }
    for (const auto& [id, delta] : step.potential_deltas) pot[id] += delta;
  }
  pot.resize(trace.base_nodes());
  return pot;
}

std::vector<Wide> compose_potential(const ContractionTrace& trace) {
  return compose_potential_prefix(trace, trace.steps().size());
}

}  // namespace balsp
