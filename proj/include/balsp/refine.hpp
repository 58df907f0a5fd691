#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "balsp/graph.hpp"

namespace balsp {

struct RefineOptions {
  bool check_invariants = false;
};

struct RefineStats {
  int64_t rounds = 0;
  int64_t relabel_steps = 0;
  int64_t topup_relabels = 0;
  int64_t contractions = 0;
  int64_t recorded_cycle_arcs = 0;
};

struct RefineResult {
  Partition partition;        // over input nodes
  std::vector<Wide> pot;      // integer potential per input node, in [-n, 0]
  std::vector<int32_t> recorded_arcs;  // arc ids witnessing negative cycles
  RefineStats stats;
};

// Relabel-and-contract refinement over integer "bar" costs >= -1.
//
// Maintains an integer potential pot in [-n, 0] and a contraction of the
// node set such that reduced bar costs stay >= -1 throughout. Arcs of
// reduced cost -1 are improvable; each round removes at least ceil(sqrt(k))
// of the k improvable nodes, either by relabeling the reachability closure
// of a largest level set, or by sweeping a path that carries many
// improvable arcs. Strongly connected components of the nonpositive
// subgraph are contracted instead of aborting on negative cycles.
class RefineEngine {
 public:
  // bar costs must be >= -1; values above n+2 may be clamped by callers
  // (a reduced bar cost can only reach 0 if bar <= n).
  RefineEngine(int32_t n, std::span<const Arc> arcs,
               std::vector<int64_t> bar, RefineOptions opt = {});

  int32_t find(int32_t v);
  int64_t potential(int32_t v) const { return pot_[v]; }
  // Current reduced bar cost of an input arc (frozen once contracted).
  int64_t reduced_bar(int32_t e) const;
  bool arc_live(int32_t e);

  void decycle();
  int32_t improvable_count();

  struct Plan {
    bool is_chain = false;
    std::vector<int32_t> antichain;      // improvable reps of the level set
    std::vector<int32_t> path_reps;      // reps along the witness path
    std::vector<int32_t> chain_improvable;  // subset of path_reps, path order
  };
  // Requires an acyclic nonpositive subgraph (call decycle() first).
  Plan antichain_or_chain();
  // Largest level set over all depths; relabeling its closure removes
  // every member (used to top up rounds where the path sweep fell short).
  std::vector<int32_t> level_antichain();

  // Decrements the potential of everything reachable from `sources`.
  void cut_relabel(std::span<const int32_t> sources);
  void eliminate_chain(const Plan& plan);

  void run();
  RefineResult take_result();

 private:
  struct RepGraph {
    std::vector<int32_t> reps;       // live class representatives
    std::vector<int32_t> index;      // node -> compact index (reps only)
    std::vector<std::vector<int32_t>> out;  // compact index -> live arc ids
  };
  struct DagLabels {
    RepGraph rg;
    std::vector<int64_t> depth;      // 0 or -(improvable arcs on best path)
    std::vector<int32_t> pred;       // arc realizing the depth
    std::vector<uint8_t> improvable;
    int64_t improvable_total = 0;
  };
  RepGraph rep_graph();
  DagLabels dag_labels();
  void relabel_class(int32_t rep, int64_t delta);
  void check_floor() const;

  int32_t n_;
  std::vector<Arc> arcs_;
  std::vector<int64_t> bar_;
  std::vector<int64_t> pot_;
  std::vector<int32_t> uf_;
  std::vector<std::vector<int32_t>> members_;  // valid at roots
  std::vector<int32_t> recorded_;
  RefineOptions opt_;
  RefineStats stats_;
};

RefineResult goldberg_refine(int32_t n, std::span<const Arc> arcs,
                             std::span<const Wide> costs,
                             RefineOptions opt = {});

struct SmallCyclesResult {
  Partition partition;
  std::vector<Wide> pot;  // multiples of D in [-nD, 0]
  RefineStats stats;
};

// Contracts the strongly connected pieces of the [L, L+2D] reduced-cost
// range and pushes every cross-class arc to reduced cost >= L+D. Costs must
// all be >= L; potentials move in steps of D.
SmallCyclesResult small_cycles(Wide L, Wide D, int32_t n,
                               std::span<const Arc> arcs,
                               RefineOptions opt = {});
SmallCyclesResult small_cycles(const Graph& g, Wide L, Wide D,
                               RefineOptions opt = {});

}  // namespace balsp
