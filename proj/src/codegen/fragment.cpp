#include "edgeprog/codegen/fragment.hpp"

#include <algorithm>
#include <set>

#include "edgeprog/error.hpp"

namespace edgeprog::codegen {

const char* to_string(WireKind k) {
  switch (k) {
    case WireKind::Intra: return "intra";
    case WireKind::LocalHop: return "hop";
    case WireKind::Send: return "send";
  }
  return "?";
}

std::size_t Schedule::send_count() const {
  std::size_t n = 0;
  for (const auto& f : fragments) {
    n += static_cast<std::size_t>(std::count_if(f.outgoing.begin(), f.outgoing.end(),
                                                [](const Wire& w) { return w.kind == WireKind::Send; }));
  }
  return n;
}

namespace {

class Builder {
 public:
  Builder(const FlowGraph& g, const Assignment& a, const profiles::ProfileSet& p, const FragmentOptions& o)
      : g_(g), a_(a), opts_(o) {
    const std::size_t n = g.blocks().size();
    placed_.assign(n, false);
    frag_of_.assign(n, -1);
    cost_.resize(n);
    for (const auto& b : g.blocks()) {
      cost_[static_cast<std::size_t>(b.id)] =
          partitioner::block_compute_time(b, g.devices()[static_cast<std::size_t>(dev(b.id))], p);
    }
  }

  Schedule run() {
    Schedule s;
    s.app = g_.name();
    s.devices = g_.devices();
    s.per_device.assign(g_.devices().size(), {});
    const std::size_t n = g_.blocks().size();
    for (std::size_t placed = 0; placed < n;) {
      int root = -1;
      for (const auto& b : g_.blocks()) {
        if (!placed_[static_cast<std::size_t>(b.id)] && ready(b.id)) {
          root = b.id;
          break;
        }
      }
      if (root < 0) throw Error(ErrorKind::InternalInvariant, "no ready block while fragmenting");
      Fragment f;
      f.id = static_cast<int>(s.fragments.size());
      f.device = dev(root);
      take(f, root);
      grow(f, root);
      placed += f.blocks.size();
      const auto& head = g_.block(f.blocks.front());
      f.timer_polled = head.primitive == flowgraph::Primitive::Sample;
      if (f.timer_polled) f.interval_ms = head.interval_ms;
      s.per_device[static_cast<std::size_t>(f.device)].push_back(f.id);
      s.fragments.push_back(std::move(f));
    }
    wire(s);
    return s;
  }

 private:
  int dev(int block) const { return a_[static_cast<std::size_t>(block)]; }

  bool ready(int block) const {
    for (int ei : g_.in_edges(block)) {
      if (!placed_[static_cast<std::size_t>(g_.edges()[static_cast<std::size_t>(ei)].from)]) return false;
    }
    return true;
  }

  void take(Fragment& f, int block) {
    placed_[static_cast<std::size_t>(block)] = true;
    frag_of_[static_cast<std::size_t>(block)] = f.id;
    f.blocks.push_back(block);
    f.compute += cost_[static_cast<std::size_t>(block)];
  }

  void grow(Fragment& f, int block) {
    for (int ei : g_.out_edges(block)) {
      const int s = g_.edges()[static_cast<std::size_t>(ei)].to;
      if (placed_[static_cast<std::size_t>(s)] || dev(s) != f.device || !ready(s)) continue;
      if ((f.compute + cost_[static_cast<std::size_t>(s)]) > opts_.budget) continue;
      take(f, s);
      grow(f, s);
    }
  }

  void wire(Schedule& s) const {
    for (const auto& e : g_.edges()) {
      Wire w;
      w.from_block = e.from;
      w.to_block = e.to;
      w.from_fragment = frag_of_[static_cast<std::size_t>(e.from)];
      w.to_fragment = frag_of_[static_cast<std::size_t>(e.to)];
      w.to_device = dev(e.to);
      w.payload_bytes = e.payload_bytes;
      Fragment& from = s.fragments[static_cast<std::size_t>(w.from_fragment)];
      if (w.from_fragment == w.to_fragment) {
        w.kind = WireKind::Intra;
        from.internal.push_back(w);
        continue;
      }
      w.kind = dev(e.from) == dev(e.to) ? WireKind::LocalHop : WireKind::Send;
      from.outgoing.push_back(w);
      auto& in = s.fragments[static_cast<std::size_t>(w.to_fragment)].incoming;
      if (std::find(in.begin(), in.end(), w.from_fragment) == in.end()) in.push_back(w.from_fragment);
    }
    for (auto& f : s.fragments) std::sort(f.incoming.begin(), f.incoming.end());
  }

  const FlowGraph& g_;
  const Assignment& a_;
  FragmentOptions opts_;
  std::vector<bool> placed_;
  std::vector<int> frag_of_;
  std::vector<Duration> cost_;
};

}  // namespace

Schedule fragment(const FlowGraph& g, const Assignment& a, const profiles::ProfileSet& p,
                  const FragmentOptions& opts) {
  partitioner::check_assignment(g, a);
  return Builder(g, a, p, opts).run();
}

std::vector<std::pair<int, int>> expand(const Schedule& s) {
  std::vector<std::pair<int, int>> out;
  for (const auto& f : s.fragments) {
    for (const auto& w : f.internal) out.push_back({w.from_block, w.to_block});
    for (const auto& w : f.outgoing) out.push_back({w.from_block, w.to_block});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace edgeprog::codegen
