#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgeprog/partitioner/evaluate.hpp"
#include "edgeprog/partitioner/ilp.hpp"

namespace edgeprog::partitioner {

struct SolverStats {
  std::uint64_t nodes = 0;  // search nodes (B&B) or assignments (brute force)
  double wall_ms = 0;       // not part of any serialized output
};

struct Partition {
  Objective mode = Objective::Latency;
  std::string method;
  Assignment assignment;     // device index per block
  std::int64_t value = 0;    // us (latency) or pJ (energy)
  int cross_edges = 0;
  std::vector<CostTerm> breakdown;
  SolverStats stats;

  Duration latency() const { return Duration{value}; }
  Energy energy() const { return Energy{value}; }
};

// "12.345 ms" or "0.300000000 mJ"
std::string format_value(Objective mode, std::int64_t value);

// Exact optimum. Ties are broken by fewer cross-device edges, then by the
// lexicographically smallest device-alias sequence in block-id order.
// The result is re-verified against the model and evaluate_*; a mismatch
// throws InternalInvariant.
Partition solve(const IlpModel& model, const FlowGraph& g, const ProfileSet& p);

// Convenience: build_ilp + solve.
Partition solve(const FlowGraph& g, const ProfileSet& p, Objective mode,
                std::size_t path_cap = kDefaultPathCap);

// Largest search space brute_force accepts.
inline constexpr std::uint64_t kBruteForceLimit = std::uint64_t{1} << 24;

// Product of candidate-set sizes, saturating at UINT64_MAX.
std::uint64_t search_space(const FlowGraph& g);

// Exhaustive enumeration under the same tie-break rule as solve. Throws
// SearchSpaceTooLarge beyond kBruteForceLimit. `threads` = 0 uses the
// OpenMP default; 1 runs the serial reference loop.
Partition brute_force(const FlowGraph& g, const ProfileSet& p, Objective mode, int threads = 0);

// Weighted additive objective  alpha * CPU + beta * Net  with weights in
// thousandths; CPU counts compute time on every device, edge included.
struct WishboneWeights {
  std::int64_t alpha_milli = 500;
  std::int64_t beta_milli = 500;

  static WishboneWeights from_alpha(double alpha);
  std::string label() const;  // "Wishbone(0.5,0.5)"
};

// Minimizes the Wishbone objective exactly, then reports the result under
// the true objective `mode`.
Partition solve_wishbone(const FlowGraph& g, const ProfileSet& p, const WishboneWeights& w, Objective mode);

// The Wishbone objective value of an assignment, in us * thousandths.
std::int64_t wishbone_value(const FlowGraph& g, const Assignment& a, const ProfileSet& p,
                            const WishboneWeights& w);

// Same as solve_wishbone but by enumeration; test oracle.
Assignment brute_force_wishbone(const FlowGraph& g, const ProfileSet& p, const WishboneWeights& w);

}  // namespace edgeprog::partitioner
