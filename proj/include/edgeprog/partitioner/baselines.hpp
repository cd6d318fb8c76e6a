#pragma once

#include <string>
#include <vector>

#include "edgeprog/partitioner/solver.hpp"

namespace edgeprog::partitioner {

// Every movable block on the edge device.
Partition baseline_rtifttt(const FlowGraph& g, const ProfileSet& p, Objective mode);

// Wishbone with explicit weights; see solve_wishbone.
Partition baseline_wishbone(const FlowGraph& g, const ProfileSet& p, const WishboneWeights& w, Objective mode);

struct WishboneSweep {
  std::vector<WishboneWeights> weights;
  std::vector<Partition> results;  // evaluated under the true objective
  std::size_t best = 0;            // lowest true objective, first alpha on ties
};

// alpha = 0, step, 2*step, ..., 1 (thousandths), beta = 1 - alpha.
WishboneSweep wishbone_sweep(const FlowGraph& g, const ProfileSet& p, Objective mode,
                             std::int64_t step_milli = 100);

struct ComparisonRow {
  std::string method;
  std::int64_t value = 0;
  double normalized = 0;  // value / worst row value
  int cross_edges = 0;
  Assignment assignment;
};

struct ComparisonReport {
  std::string graph;
  std::string profile;
  Objective mode = Objective::Latency;
  std::vector<ComparisonRow> rows;  // EdgeProg, RT-IFTTT, Wishbone(0.5,0.5), Wishbone(opt.)
  WishboneWeights best_weights;
};

ComparisonReport compare(const FlowGraph& g, const ProfileSet& p, Objective mode,
                         std::int64_t sweep_step_milli = 100);

}  // namespace edgeprog::partitioner
