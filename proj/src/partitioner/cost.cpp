#include "edgeprog/partitioner/cost.hpp"

#include <algorithm>
#include <set>

#include "edgeprog/error.hpp"

namespace edgeprog::partitioner {

using flowgraph::Primitive;

const char* to_string(Objective o) { return o == Objective::Latency ? "latency" : "energy"; }

namespace {

bool defaults_to_zero(Primitive p) {
  return p == Primitive::Sample || p == Primitive::Actuate || p == Primitive::Conj;
}

}  // namespace

Duration block_compute_time(const LogicBlock& b, const Device& d, const ProfileSet& p) {
  if (b.primitive == Primitive::Aux) return Duration{};
  if (auto t = p.compute_time(b.functionality_key(), b.id, d)) return *t;
  if (defaults_to_zero(b.primitive)) return Duration{};
  throw Error(ErrorKind::MissingEntry,
              "MissingEntry(" + b.functionality_key() + ", " + d.alias + "): no compute time for block " +
                  std::to_string(b.id));
}

Energy compute_energy(const LogicBlock& b, const Device& d, const ProfileSet& p) {
  if (d.is_edge || b.primitive == Primitive::Aux) return Energy{};
  return block_compute_time(b, d, p) * p.power(d).compute;
}

std::vector<std::string> missing_entries(const FlowGraph& g, const ProfileSet& p) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto note = [&](std::string line) {
    if (seen.insert(line).second) out.push_back(std::move(line));
  };
  const auto& devs = g.devices();
  for (const auto& b : g.blocks()) {
    for (int c : b.placement.candidates) {
      const Device& d = devs[static_cast<std::size_t>(c)];
      if (b.primitive == Primitive::Aux || defaults_to_zero(b.primitive)) continue;
      if (!p.compute_time(b.functionality_key(), b.id, d)) {
        note("MissingEntry(" + b.functionality_key() + ", " + d.alias + ")");
      }
    }
  }
  for (const auto& b : g.blocks()) {
    for (int c : b.placement.candidates) {
      const Device& d = devs[static_cast<std::size_t>(c)];
      if (!p.has_power(d)) note("UnknownDevice(" + d.alias + ")");
    }
  }
  for (const auto& e : g.edges()) {
    for (int cu : g.block(e.from).placement.candidates) {
      for (int cv : g.block(e.to).placement.candidates) {
        if (cu == cv) continue;
        const Device& a = devs[static_cast<std::size_t>(cu)];
        const Device& b = devs[static_cast<std::size_t>(cv)];
        if (!p.find_link(a, b)) note("UnknownLink(" + a.alias + ", " + b.alias + ")");
      }
    }
  }
  return out;
}

void require_complete(const FlowGraph& g, const ProfileSet& p) {
  auto holes = missing_entries(g, p);
  if (holes.empty()) return;
  std::string msg = "profile does not cover the graph:";
  for (const auto& h : holes) msg += "\n  " + h;
  throw Error(ErrorKind::MissingEntry, msg);
}

void check_assignment(const FlowGraph& g, const Assignment& a) {
  if (a.size() != g.blocks().size()) {
    throw Error(ErrorKind::IncompleteAssignment, "assignment has " + std::to_string(a.size()) +
                                                     " entries for " + std::to_string(g.blocks().size()) +
                                                     " blocks");
  }
  for (const auto& b : g.blocks()) {
    int d = a[static_cast<std::size_t>(b.id)];
    if (d < 0) {
      throw Error(ErrorKind::IncompleteAssignment, "block " + std::to_string(b.id) + " is unassigned");
    }
    const auto& c = b.placement.candidates;
    if (std::find(c.begin(), c.end(), d) == c.end()) {
      throw Error(ErrorKind::InvalidArgument,
                  "block " + std::to_string(b.id) + " assigned outside its candidate set");
    }
  }
}

int cross_edges(const FlowGraph& g, const Assignment& a) {
  int n = 0;
  for (const auto& e : g.edges()) {
    if (a[static_cast<std::size_t>(e.from)] != a[static_cast<std::size_t>(e.to)]) ++n;
  }
  return n;
}

CostTable CostTable::build(const FlowGraph& g, const ProfileSet& p) {
  require_complete(g, p);
  CostTable t;
  const auto& devs = g.devices();
  for (const auto& b : g.blocks()) {
    std::vector<std::int64_t> us, pj;
    for (int c : b.placement.candidates) {
      const Device& d = devs[static_cast<std::size_t>(c)];
      us.push_back(block_compute_time(b, d, p).us);
      pj.push_back(compute_energy(b, d, p).pj);
    }
    t.comp_us.push_back(std::move(us));
    t.comp_pj.push_back(std::move(pj));
  }
  for (const auto& e : g.edges()) {
    std::vector<std::int64_t> us, pj;
    std::vector<std::uint8_t> cr;
    for (int cu : g.block(e.from).placement.candidates) {
      for (int cv : g.block(e.to).placement.candidates) {
        const Device& a = devs[static_cast<std::size_t>(cu)];
        const Device& b = devs[static_cast<std::size_t>(cv)];
        us.push_back(profiles::network_time(e.payload_bytes, a, b, p).us);
        pj.push_back(profiles::transfer_energy(e.payload_bytes, a, b, p).pj);
        cr.push_back(cu != cv ? 1 : 0);
      }
    }
    t.net_us.push_back(std::move(us));
    t.net_pj.push_back(std::move(pj));
    t.cross.push_back(std::move(cr));
  }
  return t;
}

}  // namespace edgeprog::partitioner
