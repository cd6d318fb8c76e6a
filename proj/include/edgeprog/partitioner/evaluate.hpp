#pragma once

#include <string>
#include <vector>

#include "edgeprog/partitioner/cost.hpp"

namespace edgeprog::partitioner {

// Makespan: the longest full path, summing compute and network time along
// it. Longest-path DP over the DAG; no path enumeration.
Duration evaluate_latency(const FlowGraph& g, const Assignment& a, const ProfileSet& p);

// Sum of every block's compute energy plus every edge's transfer energy.
Energy evaluate_energy(const FlowGraph& g, const Assignment& a, const ProfileSet& p);

struct CostTerm {
  std::string what;
  std::int64_t value = 0;  // us for latency terms, pJ for energy terms
};

// Latency: one term per full path (when there are at most `path_limit`),
// followed by the critical path. Energy: one term per non-zero block or
// edge contribution.
std::vector<CostTerm> breakdown(const FlowGraph& g, const Assignment& a, const ProfileSet& p,
                                Objective mode, std::size_t path_limit = 64);

// One block id sequence realizing the makespan (first sink, first
// predecessor on ties).
std::vector<int> critical_path(const FlowGraph& g, const Assignment& a, const ProfileSet& p);

}  // namespace edgeprog::partitioner
