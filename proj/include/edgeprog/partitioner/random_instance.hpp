#pragma once

#include <cstdint>

#include "edgeprog/flowgraph/flowgraph.hpp"
#include "edgeprog/profiles/profiles.hpp"

namespace edgeprog::partitioner {

struct Instance {
  flowgraph::FlowGraph graph;
  profiles::ProfileSet profiles;
};

struct RandomSpec {
  int min_devices = 2;  // including the edge
  int max_devices = 4;
  int max_movable = 10;
  std::int64_t max_compute_us = 20000;
  std::int64_t max_packet_us = 5000;
};

// Seeded random placement instance: SAMPLE sources and ACTUATE sinks pinned
// to random devices, movable blocks with random candidate subsets, integer
// per-block compute times, random power rows and links. Identical seeds give
// identical instances.
Instance random_instance(std::uint64_t seed, const RandomSpec& spec = {});

}  // namespace edgeprog::partitioner
