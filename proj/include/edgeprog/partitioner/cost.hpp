#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgeprog/flowgraph/flowgraph.hpp"
#include "edgeprog/profiles/profiles.hpp"

namespace edgeprog::partitioner {

using flowgraph::FlowGraph;
using flowgraph::LogicBlock;
using profiles::Device;
using profiles::ProfileSet;

enum class Objective { Latency, Energy };

const char* to_string(Objective o);

// Device index (into FlowGraph::devices()) per block id.
using Assignment = std::vector<int>;

// T^C of a block on a device. AUX is free everywhere; SAMPLE, CONJ and
// ACTUATE default to zero when the profile has no row; CMP and ALGO throw
// MissingEntry.
Duration block_compute_time(const LogicBlock& b, const Device& d, const ProfileSet& p);

// T^C * P_C; zero on the edge and for AUX.
Energy compute_energy(const LogicBlock& b, const Device& d, const ProfileSet& p);

// Every (block, device) compute hole, power row and link the graph needs,
// one human-readable line each. Empty iff the profile covers the graph.
std::vector<std::string> missing_entries(const FlowGraph& g, const ProfileSet& p);

// Throws MissingEntry listing every hole.
void require_complete(const FlowGraph& g, const ProfileSet& p);

// Throws IncompleteAssignment / InvalidArgument unless `a` gives every block
// one of its candidate devices.
void check_assignment(const FlowGraph& g, const Assignment& a);

// Number of edges whose endpoints sit on different devices.
int cross_edges(const FlowGraph& g, const Assignment& a);

// All costs, indexed by candidate position rather than device. Block b's
// k-th candidate is g.block(b).placement.candidates[k]; an edge's pair
// (ku, kv) lives at ku * |C(to)| + kv.
struct CostTable {
  std::vector<std::vector<std::int64_t>> comp_us;   // [block][k]
  std::vector<std::vector<std::int64_t>> comp_pj;   // [block][k]
  std::vector<std::vector<std::int64_t>> net_us;    // [edge][pair]
  std::vector<std::vector<std::int64_t>> net_pj;    // [edge][pair]
  std::vector<std::vector<std::uint8_t>> cross;     // [edge][pair]

  static CostTable build(const FlowGraph& g, const ProfileSet& p);
};

}  // namespace edgeprog::partitioner
