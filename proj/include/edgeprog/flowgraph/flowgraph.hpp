#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgeprog/profiles/profiles.hpp"

namespace edgeprog::flowgraph {

using profiles::Device;

enum class Primitive { Sample, Cmp, Conj, Aux, Actuate, Algo };

const char* to_string(Primitive p);

// Pinned blocks have exactly one candidate. Movable candidate lists are
// indices into FlowGraph::devices(), sorted by device alias.
struct Placement {
  bool pinned = false;
  std::vector<int> candidates;

  static Placement pinned_to(int device) { return Placement{true, {device}}; }
  static Placement movable(std::vector<int> devices) { return Placement{false, std::move(devices)}; }
  bool operator==(const Placement&) const = default;
};

struct LogicBlock {
  int id = 0;
  Primitive primitive = Primitive::Algo;
  std::string name;   // algorithm name for Algo blocks, primitive name otherwise
  std::string label;  // human readable, e.g. "SAMPLE(A.MIC)" or "VoiceRecog.ID:GMM"
  std::vector<std::string> source_args;
  Placement placement;
  std::int64_t output_bytes = 0;
  std::int64_t interval_ms = 1000;  // sampling period, SAMPLE blocks only

  // Key into the compute profile.
  const std::string& functionality_key() const { return name; }
  bool movable() const { return !placement.pinned; }
  bool operator==(const LogicBlock&) const = default;
};

struct DataEdge {
  int from = 0;
  int to = 0;
  std::int64_t payload_bytes = 0;  // q, equals blocks[from].output_bytes

  bool operator==(const DataEdge&) const = default;
};

// Immutable dataflow DAG. Block ids equal their index and every edge goes
// from a lower id to a higher one, so id order is a topological order.
class FlowGraph {
 public:
  FlowGraph() = default;
  // Throws InvalidArgument when an invariant is violated.
  FlowGraph(std::string name, std::vector<Device> devices, std::vector<LogicBlock> blocks,
            std::vector<DataEdge> edges);

  const std::string& name() const { return name_; }
  const std::vector<Device>& devices() const { return devices_; }
  int edge_device() const { return edge_device_; }
  int device_index(const std::string& alias) const;  // -1 when absent

  const std::vector<LogicBlock>& blocks() const { return blocks_; }
  const LogicBlock& block(int id) const { return blocks_.at(static_cast<std::size_t>(id)); }
  const std::vector<DataEdge>& edges() const { return edges_; }

  // Edge indices, ordered by the opposite endpoint's id.
  const std::vector<int>& out_edges(int id) const { return out_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& in_edges(int id) const { return in_[static_cast<std::size_t>(id)]; }

  std::vector<int> sources() const;
  std::vector<int> sinks() const;

  std::size_t movable_count() const;
  // Blocks that do real work: Algo and Cmp.
  std::size_t operational_count() const;

  bool operator==(const FlowGraph& o) const {
    return name_ == o.name_ && devices_ == o.devices_ && blocks_ == o.blocks_ && edges_ == o.edges_;
  }

 private:
  std::string name_;
  std::vector<Device> devices_;
  int edge_device_ = -1;
  std::vector<LogicBlock> blocks_;
  std::vector<DataEdge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// A source-to-sink path, as block ids.
using FullPath = std::vector<int>;

// All full paths in lexicographic order of id sequences, or nullopt when
// there are more than `cap`.
std::optional<std::vector<FullPath>> enumerate_paths(const FlowGraph& g, std::size_t cap);

// Number of full paths by dynamic programming (saturates at UINT64_MAX).
std::uint64_t count_paths(const FlowGraph& g);

std::string to_dot(const FlowGraph& g);
// Same, with movable blocks annotated by their assigned device.
std::string to_dot(const FlowGraph& g, const std::vector<int>& assignment);

// Structured dump, schema {"name", "devices": [...], "blocks": [...], "edges": [...]}.
std::string to_json(const FlowGraph& g);

}  // namespace edgeprog::flowgraph
