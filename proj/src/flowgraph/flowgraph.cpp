#include "edgeprog/flowgraph/flowgraph.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "edgeprog/error.hpp"

namespace edgeprog::flowgraph {

const char* to_string(Primitive p) {
  switch (p) {
    case Primitive::Sample: return "SAMPLE";
    case Primitive::Cmp: return "CMP";
    case Primitive::Conj: return "CONJ";
    case Primitive::Aux: return "AUX";
    case Primitive::Actuate: return "ACTUATE";
    case Primitive::Algo: return "ALGO";
  }
  return "?";
}

namespace {
[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorKind::InvalidArgument, "invalid flow graph: " + msg);
}
}  // namespace

FlowGraph::FlowGraph(std::string name, std::vector<Device> devices, std::vector<LogicBlock> blocks,
                     std::vector<DataEdge> edges)
    : name_(std::move(name)),
      devices_(std::move(devices)),
      blocks_(std::move(blocks)),
      edges_(std::move(edges)) {
  std::set<std::string> aliases;
  for (std::size_t d = 0; d < devices_.size(); ++d) {
    if (!aliases.insert(devices_[d].alias).second) invalid("duplicate device " + devices_[d].alias);
    if (devices_[d].is_edge) {
      if (edge_device_ >= 0) invalid("more than one edge device");
      edge_device_ = static_cast<int>(d);
    }
  }
  if (!blocks_.empty() && edge_device_ < 0) invalid("no edge device");

  const int n = static_cast<int>(blocks_.size());
  const int ndev = static_cast<int>(devices_.size());
  for (int i = 0; i < n; ++i) {
    const LogicBlock& b = blocks_[static_cast<std::size_t>(i)];
    if (b.id != i) invalid("block ids must equal their index");
    const auto& c = b.placement.candidates;
    if (c.empty()) invalid("block " + std::to_string(i) + " has no candidate device");
    if (b.placement.pinned && c.size() != 1) invalid("pinned block with several devices");
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] < 0 || c[k] >= ndev) invalid("candidate device out of range");
      if (k > 0 && devices_[static_cast<std::size_t>(c[k - 1])].alias >=
                       devices_[static_cast<std::size_t>(c[k])].alias) {
        invalid("candidates of block " + std::to_string(i) + " must be sorted by alias");
      }
    }
    if (b.output_bytes < 0) invalid("negative output size");
  }

  out_.assign(static_cast<std::size_t>(n), {});
  in_.assign(static_cast<std::size_t>(n), {});
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const DataEdge& de = edges_[e];
    if (de.from < 0 || de.to >= n || de.from >= de.to) {
      invalid("edge " + std::to_string(de.from) + "->" + std::to_string(de.to) +
              " must go from a lower to a higher id");
    }
    if (!seen.insert({de.from, de.to}).second) invalid("duplicate edge");
    if (de.payload_bytes != blocks_[static_cast<std::size_t>(de.from)].output_bytes) {
      invalid("edge payload must equal the producer's output size");
    }
    if (de.payload_bytes <= 0) invalid("block with a successor must produce a payload");
    out_[static_cast<std::size_t>(de.from)].push_back(static_cast<int>(e));
    in_[static_cast<std::size_t>(de.to)].push_back(static_cast<int>(e));
  }
  for (int i = 0; i < n; ++i) {
    auto& o = out_[static_cast<std::size_t>(i)];
    std::sort(o.begin(), o.end(), [&](int a, int b) {
      return edges_[static_cast<std::size_t>(a)].to < edges_[static_cast<std::size_t>(b)].to;
    });
    auto& in = in_[static_cast<std::size_t>(i)];
    std::sort(in.begin(), in.end(), [&](int a, int b) {
      return edges_[static_cast<std::size_t>(a)].from < edges_[static_cast<std::size_t>(b)].from;
    });
    const LogicBlock& b = blocks_[static_cast<std::size_t>(i)];
    if (in.empty() && b.primitive != Primitive::Sample) {
      invalid("block " + std::to_string(i) + " has no input but is not a SAMPLE");
    }
    if (o.empty() && b.primitive != Primitive::Actuate) {
      invalid("block " + std::to_string(i) + " has no consumer but is not an ACTUATE");
    }
  }
}

int FlowGraph::device_index(const std::string& alias) const {
  for (std::size_t d = 0; d < devices_.size(); ++d) {
    if (devices_[d].alias == alias) return static_cast<int>(d);
  }
  return -1;
}

std::vector<int> FlowGraph::sources() const {
  std::vector<int> out;
  for (const auto& b : blocks_) {
    if (in_edges(b.id).empty()) out.push_back(b.id);
  }
  return out;
}

std::vector<int> FlowGraph::sinks() const {
  std::vector<int> out;
  for (const auto& b : blocks_) {
    if (out_edges(b.id).empty()) out.push_back(b.id);
  }
  return out;
}

std::size_t FlowGraph::movable_count() const {
  return static_cast<std::size_t>(
      std::count_if(blocks_.begin(), blocks_.end(), [](const LogicBlock& b) { return b.movable(); }));
}

std::size_t FlowGraph::operational_count() const {
  return static_cast<std::size_t>(std::count_if(blocks_.begin(), blocks_.end(), [](const LogicBlock& b) {
    return b.primitive == Primitive::Algo || b.primitive == Primitive::Cmp;
  }));
}

namespace {

// Iterative DFS; successors are visited in ascending id order, which yields
// paths in lexicographic order.
bool walk_paths(const FlowGraph& g, int src, std::size_t cap, std::vector<FullPath>& out) {
  struct Frame {
    int block;
    std::size_t next_edge;
  };
  std::vector<Frame> stack{{src, 0}};
  FullPath current{src};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& outs = g.out_edges(f.block);
    if (outs.empty()) {
      if (out.size() == cap) return false;
      out.push_back(current);
    }
    if (f.next_edge < outs.size()) {
      int to = g.edges()[static_cast<std::size_t>(outs[f.next_edge++])].to;
      stack.push_back({to, 0});
      current.push_back(to);
    } else {
      stack.pop_back();
      current.pop_back();
    }
  }
  return true;
}

}  // namespace

std::optional<std::vector<FullPath>> enumerate_paths(const FlowGraph& g, std::size_t cap) {
  std::vector<FullPath> out;
  for (int s : g.sources()) {
    if (!walk_paths(g, s, cap, out)) return std::nullopt;
  }
  return out;
}

std::uint64_t count_paths(const FlowGraph& g) {
  const std::size_t n = g.blocks().size();
  std::vector<std::uint64_t> from(n, 0);  // paths from block to any sink
  for (std::size_t k = n; k-- > 0;) {
    const auto& outs = g.out_edges(static_cast<int>(k));
    if (outs.empty()) {
      from[k] = 1;
      continue;
    }
    std::uint64_t total = 0;
    for (int e : outs) {
      std::uint64_t add = from[static_cast<std::size_t>(g.edges()[static_cast<std::size_t>(e)].to)];
      total = add > std::numeric_limits<std::uint64_t>::max() - total
                  ? std::numeric_limits<std::uint64_t>::max()
                  : total + add;
    }
    from[k] = total;
  }
  std::uint64_t total = 0;
  for (int s : g.sources()) {
    std::uint64_t add = from[static_cast<std::size_t>(s)];
    total = add > std::numeric_limits<std::uint64_t>::max() - total
                ? std::numeric_limits<std::uint64_t>::max()
                : total + add;
  }
  return total;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string dot_impl(const FlowGraph& g, const std::vector<int>* assignment) {
  std::ostringstream os;
  if (g.blocks().empty()) {
    os << "digraph {\n}\n";
    return os.str();
  }
  os << "digraph \"" << dot_escape(g.name()) << "\" {\n";
  os << "  rankdir=LR;\n";
  for (const auto& b : g.blocks()) {
    std::string where;
    if (b.placement.pinned) {
      where = g.devices()[static_cast<std::size_t>(b.placement.candidates.front())].alias;
    } else if (assignment) {
      where = g.devices()[static_cast<std::size_t>((*assignment)[static_cast<std::size_t>(b.id)])].alias;
    } else {
      where = "?";
    }
    std::string head = b.primitive == Primitive::Algo ? b.name : to_string(b.primitive);
    os << "  n" << b.id << " [label=\"" << dot_escape(head + "@" + where) << "\", tooltip=\""
       << dot_escape(b.label) << "\"";
    if (!b.placement.pinned) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : g.edges()) {
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.payload_bytes << "B\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace

std::string to_dot(const FlowGraph& g) { return dot_impl(g, nullptr); }

std::string to_dot(const FlowGraph& g, const std::vector<int>& assignment) {
  if (assignment.size() != g.blocks().size()) {
    throw Error(ErrorKind::IncompleteAssignment, "assignment does not cover every block");
  }
  return dot_impl(g, &assignment);
}

std::string to_json(const FlowGraph& g) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["name"] = g.name();
  j["devices"] = ordered_json::array();
  for (const auto& d : g.devices()) {
    j["devices"].push_back({{"alias", d.alias}, {"platform", d.platform}, {"edge", d.is_edge}});
  }
  j["blocks"] = ordered_json::array();
  for (const auto& b : g.blocks()) {
    ordered_json cands = ordered_json::array();
    for (int c : b.placement.candidates) cands.push_back(g.devices()[static_cast<std::size_t>(c)].alias);
    j["blocks"].push_back({{"id", b.id},
                           {"primitive", to_string(b.primitive)},
                           {"name", b.name},
                           {"label", b.label},
                           {"args", b.source_args},
                           {"placement", b.placement.pinned ? "pinned" : "movable"},
                           {"devices", cands},
                           {"output_bytes", b.output_bytes}});
  }
  j["edges"] = ordered_json::array();
  for (const auto& e : g.edges()) {
    j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"payload_bytes", e.payload_bytes}});
  }
  return j.dump(2) + "\n";
}

}  // namespace edgeprog::flowgraph
