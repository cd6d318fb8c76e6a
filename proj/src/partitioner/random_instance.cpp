#include "edgeprog/partitioner/random_instance.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace edgeprog::partitioner {

using flowgraph::DataEdge;
using flowgraph::LogicBlock;
using flowgraph::Placement;
using flowgraph::Primitive;

namespace {

// mt19937_64 output is fixed by the standard; the distributions are not,
// so bounded draws are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(n)); }
  std::int64_t between(std::int64_t lo, std::int64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(int percent) { return below(100) < percent; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace

Instance random_instance(std::uint64_t seed, const RandomSpec& spec) {
  Rng rng(seed);
  const int ndev = static_cast<int>(rng.between(spec.min_devices, spec.max_devices));
  std::vector<profiles::Device> devices;
  for (int d = 1; d < ndev; ++d) devices.push_back({"D" + std::to_string(d), "Rand", false});
  devices.push_back({"Edge", "Edge", true});
  const int edge = ndev - 1;

  std::vector<LogicBlock> blocks;
  std::vector<std::pair<int, int>> links;
  auto pick_device = [&] { return rng.chance(80) && ndev > 1 ? static_cast<int>(rng.below(ndev - 1)) : edge; };

  const int nsrc = static_cast<int>(rng.between(1, 3));
  for (int i = 0; i < nsrc; ++i) {
    LogicBlock b;
    b.primitive = Primitive::Sample;
    b.name = "SAMPLE";
    b.placement = Placement::pinned_to(pick_device());
    blocks.push_back(b);
  }
  const int nmov = static_cast<int>(rng.between(1, spec.max_movable));
  for (int i = 0; i < nmov; ++i) {
    LogicBlock b;
    const std::int64_t kind = rng.below(3);
    b.primitive = kind == 0 ? Primitive::Cmp : kind == 1 ? Primitive::Aux : Primitive::Algo;
    b.name = b.primitive == Primitive::Algo ? "F" + std::to_string(rng.below(4))
             : b.primitive == Primitive::Cmp ? "CMP"
                                             : "AUX";
    std::vector<int> cands;
    const std::int64_t mask = rng.between(1, (std::int64_t{1} << ndev) - 1);
    for (int d = 0; d < ndev; ++d) {
      if (mask & (std::int64_t{1} << d)) cands.push_back(d);
    }
    b.placement = Placement::movable(cands);  // device order is alias order
    const int id = static_cast<int>(blocks.size());
    const int npred = static_cast<int>(rng.between(1, 2));
    for (int k = 0; k < npred; ++k) links.push_back({static_cast<int>(rng.below(id)), id});
    blocks.push_back(b);
  }
  const int first_sink = static_cast<int>(blocks.size());
  const int nsink = static_cast<int>(rng.between(1, 3));
  for (int i = 0; i < nsink; ++i) {
    LogicBlock b;
    b.primitive = Primitive::Actuate;
    b.name = "ACTUATE";
    b.placement = Placement::pinned_to(pick_device());
    links.push_back({static_cast<int>(rng.below(first_sink)), static_cast<int>(blocks.size())});
    blocks.push_back(b);
  }
  std::set<int> has_out;
  for (auto [u, v] : links) has_out.insert(u);
  for (int u = 0; u < first_sink; ++u) {
    if (!has_out.count(u)) links.push_back({u, first_sink + static_cast<int>(rng.below(nsink))});
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i].id = static_cast<int>(i);
    blocks[i].label = std::string(flowgraph::to_string(blocks[i].primitive)) + "#" + std::to_string(i);
    blocks[i].output_bytes = static_cast<int>(i) < first_sink ? rng.between(1, 600) : 0;
  }
  std::vector<DataEdge> edges;
  for (auto [u, v] : links) edges.push_back({u, v, blocks[static_cast<std::size_t>(u)].output_bytes});

  profiles::ProfileSet p;
  p.set_name("random-" + std::to_string(seed));
  for (const auto& b : blocks) {
    for (int d : b.placement.candidates) {
      p.set_block_compute(b.id, devices[static_cast<std::size_t>(d)].alias,
                          Duration{rng.between(0, spec.max_compute_us)});
    }
  }
  for (const auto& d : devices) {
    if (d.is_edge) continue;
    auto mw = [&] { return Power{rng.between(1000, 100000)}; };
    profiles::PowerRow row;
    row.compute = mw();
    row.tx = mw();
    row.rx = mw();
    p.set_power(d.alias, row);
  }
  for (const auto& a : devices) {
    for (const auto& b : devices) {
      if (a.alias == b.alias) continue;
      p.set_link(a.alias, b.alias,
                 {"rnd", rng.between(16, 256), Duration{rng.between(100, spec.max_packet_us)}, std::nullopt});
    }
  }
  return {flowgraph::FlowGraph("random-" + std::to_string(seed), devices, std::move(blocks), std::move(edges)),
          std::move(p)};
}

}  // namespace edgeprog::partitioner
