#include "edgeprog/partitioner/evaluate.hpp"

#include <algorithm>

namespace edgeprog::partitioner {

namespace {

const Device& dev(const FlowGraph& g, const Assignment& a, int block) {
  return g.devices()[static_cast<std::size_t>(a[static_cast<std::size_t>(block)])];
}

// finish[v] = T^C(v) + max over predecessors (finish[u] + T^N(u, v)).
std::vector<Duration> finish_times(const FlowGraph& g, const Assignment& a, const ProfileSet& p) {
  std::vector<Duration> finish(g.blocks().size());
  for (const auto& b : g.blocks()) {
    Duration start{};
    for (int ei : g.in_edges(b.id)) {
      const auto& e = g.edges()[static_cast<std::size_t>(ei)];
      start = std::max(start, finish[static_cast<std::size_t>(e.from)] +
                                  profiles::network_time(e.payload_bytes, dev(g, a, e.from),
                                                         dev(g, a, e.to), p));
    }
    finish[static_cast<std::size_t>(b.id)] = start + block_compute_time(b, dev(g, a, b.id), p);
  }
  return finish;
}

}  // namespace

Duration evaluate_latency(const FlowGraph& g, const Assignment& a, const ProfileSet& p) {
  check_assignment(g, a);
  auto finish = finish_times(g, a, p);
  Duration best{};
  for (int s : g.sinks()) best = std::max(best, finish[static_cast<std::size_t>(s)]);
  return best;
}

Energy evaluate_energy(const FlowGraph& g, const Assignment& a, const ProfileSet& p) {
  check_assignment(g, a);
  Energy total{};
  for (const auto& b : g.blocks()) total += compute_energy(b, dev(g, a, b.id), p);
  for (const auto& e : g.edges()) {
    total += profiles::transfer_energy(e.payload_bytes, dev(g, a, e.from), dev(g, a, e.to), p);
  }
  return total;
}

std::vector<int> critical_path(const FlowGraph& g, const Assignment& a, const ProfileSet& p) {
  check_assignment(g, a);
  if (g.blocks().empty()) return {};
  // Recompute with strict predecessor choice so ties resolve to the
  // lowest-id predecessor.
  const std::size_t n = g.blocks().size();
  std::vector<Duration> finish(n);
  std::vector<int> pred(n, -1);
  for (const auto& b : g.blocks()) {
    Duration start{};
    for (int ei : g.in_edges(b.id)) {
      const auto& e = g.edges()[static_cast<std::size_t>(ei)];
      Duration arrive =
          finish[static_cast<std::size_t>(e.from)] +
          profiles::network_time(e.payload_bytes, dev(g, a, e.from), dev(g, a, e.to), p);
      if (pred[static_cast<std::size_t>(b.id)] < 0 || arrive > start) {
        pred[static_cast<std::size_t>(b.id)] = e.from;
        start = arrive;
      }
    }
    finish[static_cast<std::size_t>(b.id)] = start + block_compute_time(b, dev(g, a, b.id), p);
  }
  int end = -1;
  for (int s : g.sinks()) {
    if (end < 0 || finish[static_cast<std::size_t>(s)] > finish[static_cast<std::size_t>(end)]) end = s;
  }
  std::vector<int> path;
  for (int v = end; v >= 0; v = pred[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<CostTerm> breakdown(const FlowGraph& g, const Assignment& a, const ProfileSet& p,
                                Objective mode, std::size_t path_limit) {
  check_assignment(g, a);
  std::vector<CostTerm> out;
  auto path_text = [](const std::vector<int>& path) {
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "-" : "") + std::to_string(path[i]);
    return s;
  };
  if (mode == Objective::Latency) {
    auto path_len = [&](const std::vector<int>& path) {
      Duration t{};
      for (std::size_t i = 0; i < path.size(); ++i) {
        const LogicBlock& b = g.block(path[i]);
        t += block_compute_time(b, dev(g, a, b.id), p);
        if (i + 1 < path.size()) {
          t += profiles::network_time(b.output_bytes, dev(g, a, path[i]), dev(g, a, path[i + 1]), p);
        }
      }
      return t;
    };
    if (auto paths = flowgraph::enumerate_paths(g, path_limit)) {
      for (const auto& path : *paths) out.push_back({"path " + path_text(path), path_len(path).us});
    }
    auto crit = critical_path(g, a, p);
    out.push_back({"critical " + path_text(crit), path_len(crit).us});
    return out;
  }
  for (const auto& b : g.blocks()) {
    Energy e = compute_energy(b, dev(g, a, b.id), p);
    if (e.pj != 0) out.push_back({"compute " + std::to_string(b.id) + "@" + dev(g, a, b.id).alias, e.pj});
  }
  for (const auto& e : g.edges()) {
    Energy x = profiles::transfer_energy(e.payload_bytes, dev(g, a, e.from), dev(g, a, e.to), p);
    if (x.pj != 0) {
      out.push_back({"send " + std::to_string(e.from) + "->" + std::to_string(e.to) + " " +
                         dev(g, a, e.from).alias + "->" + dev(g, a, e.to).alias,
                     x.pj});
    }
  }
  return out;
}

}  // namespace edgeprog::partitioner
