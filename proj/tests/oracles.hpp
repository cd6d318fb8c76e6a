#pragma once

// Reference cost model and exhaustive search used by the tests. Written
// against the raw profile lookups only; nothing here calls the optimizer or
// its evaluators.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "edgeprog/flowgraph/flowgraph.hpp"
#include "edgeprog/profiles/profiles.hpp"

namespace edgeprog::oracle {

using flowgraph::FlowGraph;
using flowgraph::Primitive;
using profiles::ProfileSet;
using Assign = std::vector<int>;

inline const profiles::Device& dev(const FlowGraph& g, int d) { return g.devices()[static_cast<std::size_t>(d)]; }

inline std::int64_t compute_us(const FlowGraph& g, const ProfileSet& p, int block, int d) {
  const auto& b = g.block(block);
  if (b.primitive == Primitive::Aux) return 0;
  auto t = p.compute_time(b.name, b.id, dev(g, d));
  if (t) return t->us;
  return 0;  // SAMPLE, CONJ and ACTUATE without a row
}

inline std::int64_t net_us(const FlowGraph& g, const ProfileSet& p, std::int64_t q, int from, int to) {
  if (from == to || q == 0) return 0;
  const auto& l = p.link(dev(g, from), dev(g, to));
  const std::int64_t packets = (q + l.payload_bytes - 1) / l.payload_bytes;
  return packets * l.packet_time.us;
}

inline std::int64_t power_uw(const FlowGraph& g, const ProfileSet& p, int d, int which) {
  if (dev(g, d).is_edge) return 0;
  const auto row = p.power(dev(g, d));
  return which == 0 ? row.compute.uw : which == 1 ? row.tx.uw : row.rx.uw;
}

// Max over explicitly enumerated source-to-sink paths.
inline std::int64_t latency(const FlowGraph& g, const ProfileSet& p, const Assign& a) {
  std::int64_t best = 0;
  std::function<void(int, std::int64_t)> walk = [&](int at, std::int64_t acc) {
    acc += compute_us(g, p, at, a[static_cast<std::size_t>(at)]);
    bool leaf = true;
    for (const auto& e : g.edges()) {
      if (e.from != at) continue;
      leaf = false;
      walk(e.to, acc + net_us(g, p, e.payload_bytes, a[static_cast<std::size_t>(e.from)],
                              a[static_cast<std::size_t>(e.to)]));
    }
    if (leaf) best = std::max(best, acc);
  };
  std::vector<bool> has_in(g.blocks().size(), false);
  for (const auto& e : g.edges()) has_in[static_cast<std::size_t>(e.to)] = true;
  for (const auto& b : g.blocks()) {
    if (!has_in[static_cast<std::size_t>(b.id)]) walk(b.id, 0);
  }
  return best;
}

// Term by term: every block's compute energy, then every edge's transfer energy.
inline std::int64_t energy(const FlowGraph& g, const ProfileSet& p, const Assign& a) {
  std::int64_t sum = 0;
  for (const auto& b : g.blocks()) {
    const int d = a[static_cast<std::size_t>(b.id)];
    sum += compute_us(g, p, b.id, d) * power_uw(g, p, d, 0);
  }
  for (const auto& e : g.edges()) {
    const int u = a[static_cast<std::size_t>(e.from)], v = a[static_cast<std::size_t>(e.to)];
    sum += net_us(g, p, e.payload_bytes, u, v) * (power_uw(g, p, u, 1) + power_uw(g, p, v, 2));
  }
  return sum;
}

inline int cross(const FlowGraph& g, const Assign& a) {
  int n = 0;
  for (const auto& e : g.edges()) n += a[static_cast<std::size_t>(e.from)] != a[static_cast<std::size_t>(e.to)];
  return n;
}

struct Best {
  Assign assignment;
  std::int64_t value = std::numeric_limits<std::int64_t>::max();
  int cross = 0;
  std::uint64_t visited = 0;
};

// Every assignment in lexicographic order of candidate positions (candidates
// are alias-sorted); the first one with the smallest (value, cross) wins.
inline Best exhaustive(const FlowGraph& g, const std::function<std::int64_t(const Assign&)>& value) {
  const std::size_t n = g.blocks().size();
  std::vector<std::size_t> digit(n, 0);
  Assign a(n);
  Best best;
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) a[i] = g.blocks()[i].placement.candidates[digit[i]];
    const std::int64_t v = value(a);
    const int c = cross(g, a);
    ++best.visited;
    if (v < best.value || (v == best.value && c < best.cross)) best = {a, v, c, best.visited};
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digit[i] < g.blocks()[i].placement.candidates.size()) break;
      digit[i] = 0;
      if (i == 0) return best;
    }
    if (n == 0) return best;
  }
}

inline std::uint64_t space(const FlowGraph& g) {
  std::uint64_t s = 1;
  for (const auto& b : g.blocks()) {
    s *= b.placement.candidates.size();
    if (s > (std::uint64_t{1} << 40)) return s;
  }
  return s;
}

// alpha * (compute time on every device) + beta * (network time), weights in thousandths.
inline std::int64_t wishbone(const FlowGraph& g, const ProfileSet& p, const Assign& a, std::int64_t alpha,
                             std::int64_t beta) {
  std::int64_t cpu = 0, net = 0;
  for (const auto& b : g.blocks()) cpu += compute_us(g, p, b.id, a[static_cast<std::size_t>(b.id)]);
  for (const auto& e : g.edges()) {
    net += net_us(g, p, e.payload_bytes, a[static_cast<std::size_t>(e.from)], a[static_cast<std::size_t>(e.to)]);
  }
  return alpha * cpu + beta * net;
}

}  // namespace edgeprog::oracle
