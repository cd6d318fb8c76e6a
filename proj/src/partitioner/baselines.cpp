#include "edgeprog/partitioner/baselines.hpp"

#include <algorithm>

#include "edgeprog/error.hpp"

namespace edgeprog::partitioner {

Partition baseline_rtifttt(const FlowGraph& g, const ProfileSet& p, Objective mode) {
  Partition out;
  out.mode = mode;
  out.method = "RT-IFTTT";
  out.assignment.resize(g.blocks().size());
  for (const auto& b : g.blocks()) {
    const auto& c = b.placement.candidates;
    // Blocks that cannot run on the edge stay on their first candidate.
    const bool edge_ok = std::find(c.begin(), c.end(), g.edge_device()) != c.end();
    out.assignment[static_cast<std::size_t>(b.id)] = edge_ok ? g.edge_device() : c.front();
  }
  out.value = mode == Objective::Latency ? evaluate_latency(g, out.assignment, p).us
                                         : evaluate_energy(g, out.assignment, p).pj;
  out.cross_edges = cross_edges(g, out.assignment);
  out.breakdown = breakdown(g, out.assignment, p, mode);
  return out;
}

Partition baseline_wishbone(const FlowGraph& g, const ProfileSet& p, const WishboneWeights& w, Objective mode) {
  return solve_wishbone(g, p, w, mode);
}

WishboneSweep wishbone_sweep(const FlowGraph& g, const ProfileSet& p, Objective mode, std::int64_t step_milli) {
  if (step_milli <= 0 || step_milli > 1000) {
    throw Error(ErrorKind::InvalidArgument, "sweep step must lie in (0, 1]");
  }
  WishboneSweep s;
  for (std::int64_t a = 0;; a += step_milli) {
    a = std::min<std::int64_t>(a, 1000);
    s.weights.push_back({a, 1000 - a});
    s.results.push_back(solve_wishbone(g, p, s.weights.back(), mode));
    if (s.results.back().value < s.results[s.best].value) s.best = s.results.size() - 1;
    if (a == 1000) break;
  }
  return s;
}

ComparisonReport compare(const FlowGraph& g, const ProfileSet& p, Objective mode, std::int64_t sweep_step_milli) {
  ComparisonReport r;
  r.graph = g.name();
  r.profile = p.name();
  r.mode = mode;
  auto row = [](std::string method, const Partition& part) {
    return ComparisonRow{std::move(method), part.value, 0.0, part.cross_edges, part.assignment};
  };
  r.rows.push_back(row("EdgeProg", solve(g, p, mode)));
  r.rows.push_back(row("RT-IFTTT", baseline_rtifttt(g, p, mode)));
  r.rows.push_back(row("Wishbone(0.5,0.5)", baseline_wishbone(g, p, {500, 500}, mode)));
  WishboneSweep sweep = wishbone_sweep(g, p, mode, sweep_step_milli);
  r.best_weights = sweep.weights[sweep.best];
  r.rows.push_back(row("Wishbone(opt.)", sweep.results[sweep.best]));
  std::int64_t worst = 0;
  for (const auto& x : r.rows) worst = std::max(worst, x.value);
  for (auto& x : r.rows) {
    x.normalized = worst == 0 ? 1.0 : static_cast<double>(x.value) / static_cast<double>(worst);
  }
  return r;
}

}  // namespace edgeprog::partitioner
