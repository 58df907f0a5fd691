#pragma once

#include <optional>
#include <string>
#include <vector>

#include "balsp/graph.hpp"

namespace balsp {

struct OracleReport {
  std::string property;
  std::string fingerprint;
  bool pass = true;
  std::string witness;  // nonempty iff !pass
};

// Bottleneck cost b(i,j): minimum over i-j paths of the maximum arc cost.
// b(i,i) = 0 by the empty-path convention; kWideInf when unreachable.
Wide bottleneck(const Graph& g, int32_t i, int32_t j);
std::vector<Wide> bottleneck_from(const Graph& g, int32_t i);
std::vector<std::vector<Wide>> bottleneck_matrix(const Graph& g);

// Balance value beta(e): smallest r such that the subgraph of arcs with cost
// <= r contains a cycle through e. Defined for strongly connected inputs.
struct BalanceValues {
  std::vector<Wide> beta;
};
BalanceValues beta_oracle(const Graph& g);
Wide beta_single(const Graph& g, int32_t arc_id);

// Passes iff beta(e)*xi_den <= xi_num*cost(e) for every arc: every arc lies
// on a cycle whose arcs cost at most xi times its own cost.
OracleReport balance_check(const Graph& g, Wide xi_num, Wide xi_den = 1);

// The three equivalent characterizations, checked independently.
bool min_balanced_by_arc_criterion(const Graph& g, Wide xi_num, Wide xi_den);
bool min_balanced_by_pairwise(const Graph& g, Wide xi_num, Wide xi_den);
// Enumerates all proper node subsets; callers guard n <= 12.
bool min_balanced_by_cuts(const Graph& g, Wide xi_num, Wide xi_den);

std::vector<Wide> dijkstra(const Graph& g, int32_t s);
// Guarded to n <= 512.
std::vector<std::vector<Wide>> floyd_warshall(const Graph& g);

// Postcondition checker for the cycle-contraction subroutine: given the
// input (n, arcs, costs >= L) and an output (partition, potential), verify
//  (i) inside every class, reduced costs >= L and the class is strongly
//      connected using only arcs with reduced cost in [L, L+2D];
// (ii) reduced costs >= L+D across classes;
// (iii) -|N|*D <= pot <= 0 and every pot value is a multiple of D.
OracleReport check_small_cycles_output(int32_t n, std::span<const Arc> arcs,
                                       Wide L, Wide D, const Partition& p,
                                       std::span<const Wide> pot);

// Same shape for the integer refinement contract (costs >= -1):
//  (i) classes strongly connected over arcs of nonpositive reduced cost,
//      reduced cost >= -1 inside; (ii) >= 0 across; (iii) -n <= pot <= 0.
OracleReport check_refine_output(int32_t n, std::span<const Arc> arcs,
                                 const Partition& p, std::span<const Wide> pot);

}  // namespace balsp
