#pragma once

#include <string>
#include <utility>
#include <vector>

#include "edgeprog/partitioner/cost.hpp"

namespace edgeprog::codegen {

using flowgraph::FlowGraph;
using partitioner::Assignment;

enum class WireKind {
  Intra,     // both ends in one fragment: a plain function-call sequence
  LocalHop,  // same device, different fragment: a process_post event
  Send,      // different devices: handed to send_process
};

const char* to_string(WireKind k);

struct Wire {
  WireKind kind = WireKind::Intra;
  int from_block = 0;
  int to_block = 0;
  int from_fragment = 0;
  int to_fragment = 0;
  int to_device = 0;
  std::int64_t payload_bytes = 0;
};

struct Fragment {
  int id = 0;
  int device = 0;
  std::vector<int> blocks;  // execution order
  std::vector<Wire> internal;
  std::vector<Wire> outgoing;       // LocalHop and Send wires leaving this fragment
  std::vector<int> incoming;        // source fragments, ascending, no duplicates
  bool timer_polled = false;        // headed by a SAMPLE block
  std::int64_t interval_ms = 0;     // polling period when timer_polled
  Duration compute;                 // sum of block compute times
};

struct Schedule {
  std::string app;
  std::vector<profiles::Device> devices;
  std::vector<Fragment> fragments;  // topological order
  std::vector<std::vector<int>> per_device;  // [device] -> fragment ids

  std::size_t send_count() const;
};

struct FragmentOptions {
  Duration budget = Duration::from_ms(128);  // split fragments whose compute would exceed this
};

// Repeatedly takes the smallest-id block whose predecessors are all placed
// and grows a fragment from it by depth-first search over same-device
// successors in ascending id order. A successor joins only once all of its
// own predecessors are placed and it fits in the time budget.
Schedule fragment(const FlowGraph& g, const Assignment& a, const profiles::ProfileSet& p,
                  const FragmentOptions& opts = {});

// Every graph edge reconstructed from fragments and their wiring.
std::vector<std::pair<int, int>> expand(const Schedule& s);

}  // namespace edgeprog::codegen
