#include "edgeprog/partitioner/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "edgeprog/error.hpp"

namespace edgeprog::partitioner {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

// Lexicographic search key. Latency: (makespan, cross edges). Additive
// objectives fold the cross count into `a` and leave `b` at zero.
struct Key {
  std::int64_t a = kInf;
  std::int64_t b = kInf;
  friend auto operator<=>(const Key&, const Key&) = default;
};

using Table = std::vector<std::vector<std::int64_t>>;

// Costs indexed by candidate position, plus how to combine them.
struct Dense {
  const FlowGraph* g = nullptr;
  bool minimax = false;  // latency: longest path; otherwise a plain sum
  Table unary;           // [block][k]
  Table pair;            // [edge][ku * nv + kv]
  Table cross;           // [edge][pair], 0/1
  std::vector<int> movable;
  std::int64_t fold = 1;  // additive: value * fold + cross

  std::size_t ncand(int b) const { return g->block(b).placement.candidates.size(); }
};

std::int64_t checked_fold(const Table& unary, const Table& pair, std::int64_t fold) {
  __int128 total = 0;
  for (const auto& row : unary) total += *std::max_element(row.begin(), row.end());
  for (const auto& row : pair) total += *std::max_element(row.begin(), row.end());
  total = total * fold + fold;
  if (total > (static_cast<__int128>(1) << 62)) {
    throw Error(ErrorKind::InvalidArgument, "cost magnitudes overflow the exact 64-bit objective");
  }
  return fold;
}

Dense make_dense(const FlowGraph& g, const CostTable& t, Objective mode) {
  Dense d;
  d.g = &g;
  for (const auto& b : g.blocks()) {
    if (b.movable()) d.movable.push_back(b.id);
  }
  for (const auto& row : t.cross) d.cross.emplace_back(row.begin(), row.end());
  if (mode == Objective::Latency) {
    d.minimax = true;
    d.unary = t.comp_us;
    d.pair = t.net_us;
    return d;
  }
  d.fold = static_cast<std::int64_t>(g.edges().size()) + 1;
  checked_fold(t.comp_pj, t.net_pj, d.fold);
  d.unary = t.comp_pj;
  for (auto& row : d.unary) {
    for (auto& v : row) v *= d.fold;
  }
  d.pair = t.net_pj;
  for (std::size_t e = 0; e < d.pair.size(); ++e) {
    for (std::size_t k = 0; k < d.pair[e].size(); ++k) d.pair[e][k] = d.pair[e][k] * d.fold + d.cross[e][k];
  }
  return d;
}

Dense make_wishbone_dense(const FlowGraph& g, const CostTable& t, const WishboneWeights& w) {
  Dense d;
  d.g = &g;
  for (const auto& b : g.blocks()) {
    if (b.movable()) d.movable.push_back(b.id);
  }
  for (const auto& row : t.cross) d.cross.emplace_back(row.begin(), row.end());
  d.fold = static_cast<std::int64_t>(g.edges().size()) + 1;
  Table cpu = t.comp_us, net = t.net_us;
  for (auto& row : cpu) {
    for (auto& v : row) v *= w.alpha_milli;
  }
  for (auto& row : net) {
    for (auto& v : row) v *= w.beta_milli;
  }
  checked_fold(cpu, net, d.fold);
  d.unary = cpu;
  for (auto& row : d.unary) {
    for (auto& v : row) v *= d.fold;
  }
  d.pair = net;
  for (std::size_t e = 0; e < d.pair.size(); ++e) {
    for (std::size_t k = 0; k < d.pair[e].size(); ++k) d.pair[e][k] = d.pair[e][k] * d.fold + d.cross[e][k];
  }
  return d;
}

// Exact key of a complete candidate-index vector.
Key exact_key(const Dense& d, const std::vector<int>& k) {
  const FlowGraph& g = *d.g;
  const auto& edges = g.edges();
  if (!d.minimax) {
    std::int64_t s = 0;
    for (const auto& b : g.blocks()) s += d.unary[static_cast<std::size_t>(b.id)][static_cast<std::size_t>(k[static_cast<std::size_t>(b.id)])];
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::size_t nv = d.ncand(edges[e].to);
      s += d.pair[e][static_cast<std::size_t>(k[static_cast<std::size_t>(edges[e].from)]) * nv +
                     static_cast<std::size_t>(k[static_cast<std::size_t>(edges[e].to)])];
    }
    return {s, 0};
  }
  std::vector<std::int64_t> finish(g.blocks().size(), 0);
  std::int64_t cross = 0;
  std::int64_t z = 0;
  for (const auto& b : g.blocks()) {
    const std::size_t v = static_cast<std::size_t>(b.id);
    std::int64_t start = 0;
    for (int ei : g.in_edges(b.id)) {
      const auto& e = edges[static_cast<std::size_t>(ei)];
      const std::size_t idx = static_cast<std::size_t>(k[static_cast<std::size_t>(e.from)]) * d.ncand(b.id) +
                              static_cast<std::size_t>(k[v]);
      start = std::max(start, finish[static_cast<std::size_t>(e.from)] + d.pair[static_cast<std::size_t>(ei)][idx]);
      cross += d.cross[static_cast<std::size_t>(ei)][idx];
    }
    finish[v] = start + d.unary[v][static_cast<std::size_t>(k[v])];
    if (g.out_edges(b.id).empty()) z = std::max(z, finish[v]);
  }
  return {z, cross};
}

// ---------------------------------------------------------------------------
// Branch and bound.

// Edge classification for one search depth. Blocks movable[depth..] are
// free; everything else has a fixed candidate.
struct DepthInfo {
  std::vector<int> fixed_fixed;
  std::vector<int> fixed_free;
  std::vector<int> non_tree;  // free-free edges outside the spanning forest
  std::vector<int> order;     // free blocks, parents before children
  std::vector<int> parent;    // [block] -> parent block in the forest, -1 for roots
  std::vector<int> parent_edge;
};

class BranchAndBound {
 public:
  explicit BranchAndBound(const Dense& d) : d_(d), g_(*d.g) {
    const std::size_t n = g_.blocks().size();
    k_.assign(n, 0);
    pos_of_.assign(n, -1);
    for (std::size_t j = 0; j < d_.movable.size(); ++j) {
      pos_of_[static_cast<std::size_t>(d_.movable[j])] = static_cast<int>(j);
      k_[static_cast<std::size_t>(d_.movable[j])] = -1;
    }
    for (std::size_t e = 0; e < d_.pair.size(); ++e) {
      pair_min_.push_back(*std::min_element(d_.pair[e].begin(), d_.pair[e].end()));
      cross_min_.push_back(*std::min_element(d_.cross[e].begin(), d_.cross[e].end()));
    }
    for (std::size_t depth = 0; depth <= d_.movable.size(); ++depth) depths_.push_back(classify(depth));
    val_.resize(n);
    arr_.resize(n);
    for (const auto& b : g_.blocks()) {
      val_[static_cast<std::size_t>(b.id)].resize(d_.ncand(b.id));
      arr_[static_cast<std::size_t>(b.id)].resize(d_.ncand(b.id));
    }
  }

  std::vector<int> run() {
    dfs(0);
    if (best_.a == kInf) throw Error(ErrorKind::Infeasible, "no feasible assignment");
    return best_k_;
  }

  Key best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool is_free(int block, std::size_t depth) const {
    int p = pos_of_[static_cast<std::size_t>(block)];
    return p >= 0 && static_cast<std::size_t>(p) >= depth;
  }

  DepthInfo classify(std::size_t depth) const {
    DepthInfo di;
    const std::size_t n = g_.blocks().size();
    di.parent.assign(n, -1);
    di.parent_edge.assign(n, -1);
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
      while (uf[static_cast<std::size_t>(x)] != x) {
        uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
        x = uf[static_cast<std::size_t>(x)];
      }
      return x;
    };
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, edge)
    for (std::size_t ei = 0; ei < g_.edges().size(); ++ei) {
      const auto& e = g_.edges()[ei];
      const bool fu = is_free(e.from, depth), fv = is_free(e.to, depth);
      const int idx = static_cast<int>(ei);
      if (!fu && !fv) {
        di.fixed_fixed.push_back(idx);
      } else if (fu != fv) {
        di.fixed_free.push_back(idx);
      } else if (find(e.from) != find(e.to)) {
        uf[static_cast<std::size_t>(find(e.from))] = find(e.to);
        adj[static_cast<std::size_t>(e.from)].push_back({e.to, idx});
        adj[static_cast<std::size_t>(e.to)].push_back({e.from, idx});
      } else {
        di.non_tree.push_back(idx);
      }
    }
    std::vector<char> seen(n, 0);
    for (std::size_t j = depth; j < d_.movable.size(); ++j) {
      const int root = d_.movable[j];
      if (seen[static_cast<std::size_t>(root)]) continue;
      seen[static_cast<std::size_t>(root)] = 1;
      std::size_t head = di.order.size();
      di.order.push_back(root);
      while (head < di.order.size()) {
        const int v = di.order[head++];
        for (auto [w, ei] : adj[static_cast<std::size_t>(v)]) {
          if (seen[static_cast<std::size_t>(w)]) continue;
          seen[static_cast<std::size_t>(w)] = 1;
          di.parent[static_cast<std::size_t>(w)] = v;
          di.parent_edge[static_cast<std::size_t>(w)] = ei;
          di.order.push_back(w);
        }
      }
    }
    return di;
  }

  // Candidate-pair index of edge `ei` with `a` on the producer, `b` on the consumer.
  std::size_t pair_index(int ei, int a, int b) const {
    const auto& e = g_.edges()[static_cast<std::size_t>(ei)];
    return static_cast<std::size_t>(a) * d_.ncand(e.to) + static_cast<std::size_t>(b);
  }

  // Exact minimum over the spanning forest of free blocks, with fixed
  // neighbours folded into unary terms; edges outside the forest take
  // their own minimum independently.
  std::int64_t additive_bound(const DepthInfo& di, const Table& unary, const Table& pair,
                              const std::vector<std::int64_t>& pmin, bool use_unary) {
    std::int64_t total = 0;
    const auto& edges = g_.edges();
    if (use_unary) {
      for (const auto& b : g_.blocks()) {
        const std::size_t v = static_cast<std::size_t>(b.id);
        if (k_[v] >= 0) total += unary[v][static_cast<std::size_t>(k_[v])];
      }
    }
    for (int ei : di.fixed_fixed) {
      const auto& e = edges[static_cast<std::size_t>(ei)];
      total += pair[static_cast<std::size_t>(ei)][pair_index(ei, k_[static_cast<std::size_t>(e.from)],
                                                               k_[static_cast<std::size_t>(e.to)])];
    }
    for (int v : di.order) {
      auto& val = val_[static_cast<std::size_t>(v)];
      for (std::size_t c = 0; c < val.size(); ++c) val[c] = use_unary ? unary[static_cast<std::size_t>(v)][c] : 0;
    }
    for (int ei : di.fixed_free) {
      const auto& e = edges[static_cast<std::size_t>(ei)];
      const auto& row = pair[static_cast<std::size_t>(ei)];
      if (k_[static_cast<std::size_t>(e.from)] >= 0) {
        auto& val = val_[static_cast<std::size_t>(e.to)];
        for (std::size_t c = 0; c < val.size(); ++c) {
          val[c] += row[pair_index(ei, k_[static_cast<std::size_t>(e.from)], static_cast<int>(c))];
        }
      } else {
        auto& val = val_[static_cast<std::size_t>(e.from)];
        for (std::size_t c = 0; c < val.size(); ++c) {
          val[c] += row[pair_index(ei, static_cast<int>(c), k_[static_cast<std::size_t>(e.to)])];
        }
      }
    }
    for (int ei : di.non_tree) total += pmin[static_cast<std::size_t>(ei)];
    for (auto it = di.order.rbegin(); it != di.order.rend(); ++it) {
      const int v = *it;
      const auto& val = val_[static_cast<std::size_t>(v)];
      const int p = di.parent[static_cast<std::size_t>(v)];
      if (p < 0) {
        total += *std::min_element(val.begin(), val.end());
        continue;
      }
      const int ei = di.parent_edge[static_cast<std::size_t>(v)];
      const bool v_is_from = edges[static_cast<std::size_t>(ei)].from == v;
      const auto& row = pair[static_cast<std::size_t>(ei)];
      auto& pval = val_[static_cast<std::size_t>(p)];
      for (std::size_t cp = 0; cp < pval.size(); ++cp) {
        std::int64_t best = kInf;
        for (std::size_t c = 0; c < val.size(); ++c) {
          const std::size_t idx = v_is_from ? pair_index(ei, static_cast<int>(c), static_cast<int>(cp))
                                            : pair_index(ei, static_cast<int>(cp), static_cast<int>(c));
          best = std::min(best, val[c] + row[idx]);
        }
        pval[cp] += best;
      }
    }
    return total;
  }

  // Longest-path relaxation: each block may see a different choice for an
  // unassigned predecessor, so this never exceeds the true makespan.
  std::int64_t latency_bound() {
    std::int64_t z = 0;
    const auto& edges = g_.edges();
    for (const auto& b : g_.blocks()) {
      const std::size_t v = static_cast<std::size_t>(b.id);
      auto& arr = arr_[v];
      for (std::size_t c = 0; c < arr.size(); ++c) {
        if (k_[v] >= 0 && static_cast<int>(c) != k_[v]) {
          arr[c] = kInf;
          continue;
        }
        std::int64_t start = 0;
        for (int ei : g_.in_edges(b.id)) {
          const auto& e = edges[static_cast<std::size_t>(ei)];
          const auto& ua = arr_[static_cast<std::size_t>(e.from)];
          std::int64_t best = kInf;
          for (std::size_t cu = 0; cu < ua.size(); ++cu) {
            if (ua[cu] == kInf) continue;
            best = std::min(best, ua[cu] + d_.pair[static_cast<std::size_t>(ei)]
                                               [pair_index(ei, static_cast<int>(cu), static_cast<int>(c))]);
          }
          start = std::max(start, best);
        }
        arr[c] = start + d_.unary[v][c];
      }
      if (g_.out_edges(b.id).empty()) z = std::max(z, *std::min_element(arr.begin(), arr.end()));
    }
    return z;
  }

  Key bound(std::size_t depth) {
    const DepthInfo& di = depths_[depth];
    if (!d_.minimax) return {additive_bound(di, d_.unary, d_.pair, pair_min_, true), 0};
    return {latency_bound(), additive_bound(di, d_.unary, d_.cross, cross_min_, false)};
  }

  // -1, 0, 1 comparing movable[0..=depth] with the incumbent.
  int compare_prefix(std::size_t depth) const {
    for (std::size_t j = 0; j <= depth; ++j) {
      const std::size_t b = static_cast<std::size_t>(d_.movable[j]);
      if (k_[b] != best_k_[b]) return k_[b] < best_k_[b] ? -1 : 1;
    }
    return 0;
  }

  bool prune(const Key& b, std::size_t depth) const {
    if (best_.a == kInf) return false;
    if (b > best_) return true;
    return b == best_ && compare_prefix(depth) > 0;
  }

  void dfs(std::size_t depth) {
    ++nodes_;
    if (depth == d_.movable.size()) {
      Key key = exact_key(d_, k_);
      if (key < best_ || (key == best_ && k_ < best_k_)) {
        best_ = key;
        best_k_ = k_;
      }
      return;
    }
    const int b = d_.movable[depth];
    const int n = static_cast<int>(d_.ncand(b));
    std::vector<std::pair<Key, int>> kids;
    kids.reserve(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
      k_[static_cast<std::size_t>(b)] = c;
      kids.push_back({bound(depth + 1), c});
    }
    std::sort(kids.begin(), kids.end());
    for (const auto& [kb, c] : kids) {
      k_[static_cast<std::size_t>(b)] = c;
      if (prune(kb, depth)) continue;
      dfs(depth + 1);
    }
    k_[static_cast<std::size_t>(b)] = -1;
  }

  const Dense& d_;
  const FlowGraph& g_;
  std::vector<int> k_;
  std::vector<int> pos_of_;
  std::vector<std::int64_t> pair_min_, cross_min_;
  std::vector<DepthInfo> depths_;
  Table val_, arr_;
  Key best_;
  std::vector<int> best_k_;
  std::uint64_t nodes_ = 0;
};

// ---------------------------------------------------------------------------
// Exhaustive enumeration. Index i decodes to candidate digits with the
// first movable block most significant, so index order is lexicographic.

struct Scan {
  Key key;
  std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
};

void decode(const Dense& d, std::uint64_t index, std::vector<int>& k) {
  for (std::size_t j = d.movable.size(); j-- > 0;) {
    const std::uint64_t r = d.ncand(d.movable[j]);
    k[static_cast<std::size_t>(d.movable[j])] = static_cast<int>(index % r);
    index /= r;
  }
}

Scan scan_serial(const Dense& d, std::uint64_t total) {
  Scan best;
  std::vector<int> k(d.g->blocks().size(), 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    decode(d, i, k);
    Key key = exact_key(d, k);
    if (key < best.key) best = {key, i};
  }
  return best;
}

Scan scan_parallel(const Dense& d, std::uint64_t total, int threads) {
  Scan best;
  const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel num_threads(threads)
  {
    Scan local;
    std::vector<int> k(d.g->blocks().size(), 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      decode(d, static_cast<std::uint64_t>(i), k);
      Key key = exact_key(d, k);
      if (key < local.key) local = {key, static_cast<std::uint64_t>(i)};
    }
#pragma omp critical
    {
      if (local.key < best.key || (local.key == best.key && local.index < best.index)) best = local;
    }
  }
  return best;
}

Assignment to_devices(const FlowGraph& g, const std::vector<int>& k) {
  Assignment a(g.blocks().size());
  for (const auto& b : g.blocks()) {
    a[static_cast<std::size_t>(b.id)] =
        b.placement.candidates[static_cast<std::size_t>(k[static_cast<std::size_t>(b.id)])];
  }
  return a;
}

[[noreturn]] void invariant(const std::string& what) {
  throw Error(ErrorKind::InternalInvariant, "internal invariant violated: " + what);
}

// Fills value/cross/breakdown from the key and cross-checks them against
// the independent evaluators.
Partition finish(const FlowGraph& g, const ProfileSet& p, Objective mode, const Dense& d,
                 const std::vector<int>& k, Key key) {
  Partition out;
  out.mode = mode;
  out.assignment = to_devices(g, k);
  check_assignment(g, out.assignment);
  if (d.minimax) {
    out.value = key.a;
    out.cross_edges = static_cast<int>(key.b);
  } else {
    out.value = key.a / d.fold;
    out.cross_edges = static_cast<int>(key.a % d.fold);
  }
  const std::int64_t truth = mode == Objective::Latency ? evaluate_latency(g, out.assignment, p).us
                                                        : evaluate_energy(g, out.assignment, p).pj;
  if (truth != out.value) {
    invariant("search value " + std::to_string(out.value) + " differs from evaluation " + std::to_string(truth));
  }
  if (cross_edges(g, out.assignment) != out.cross_edges) invariant("cross-edge count mismatch");
  out.breakdown = breakdown(g, out.assignment, p, mode);
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string format_value(Objective mode, std::int64_t value) {
  return mode == Objective::Latency ? format_ms(Duration{value}) + " ms" : format_mj(Energy{value}) + " mJ";
}

Partition solve(const IlpModel& model, const FlowGraph& g, const ProfileSet& p) {
  const auto t0 = std::chrono::steady_clock::now();
  const Objective mode = model.mode();
  const CostTable table = CostTable::build(g, p);
  const Dense d = make_dense(g, table, mode);
  BranchAndBound bb(d);
  std::vector<int> k = bb.run();
  Partition out = finish(g, p, mode, d, k, bb.best());
  out.method = "branch-and-bound";

  // The model must accept the point and price it identically.
  const auto x = model.point(out.assignment);
  if (!model.check(x)) invariant("optimal assignment violates the model constraints");
  if (mode == Objective::Energy || !model.path_free()) {
    if (model.objective_value(x) != out.value) {
      invariant("model objective " + std::to_string(model.objective_value(x)) + " differs from " +
                std::to_string(out.value));
    }
  }
  out.stats.nodes = bb.nodes();
  out.stats.wall_ms = elapsed_ms(t0);
  return out;
}

Partition solve(const FlowGraph& g, const ProfileSet& p, Objective mode, std::size_t path_cap) {
  return solve(build_ilp(g, p, mode, path_cap), g, p);
}

std::uint64_t search_space(const FlowGraph& g) {
  std::uint64_t total = 1;
  for (const auto& b : g.blocks()) {
    const std::uint64_t c = b.placement.candidates.size();
    if (total > std::numeric_limits<std::uint64_t>::max() / c) return std::numeric_limits<std::uint64_t>::max();
    total *= c;
  }
  return total;
}

Partition brute_force(const FlowGraph& g, const ProfileSet& p, Objective mode, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t total = search_space(g);
  if (total > kBruteForceLimit) {
    throw Error(ErrorKind::SearchSpaceTooLarge, "SearchSpaceTooLarge: " + std::to_string(total) +
                                                    " assignments exceed the limit of " +
                                                    std::to_string(kBruteForceLimit));
  }
  const CostTable table = CostTable::build(g, p);
  const Dense d = make_dense(g, table, mode);
  Scan best = threads == 1 ? scan_serial(d, total)
                           : scan_parallel(d, total, threads > 0 ? threads : omp_get_max_threads());
  std::vector<int> k(g.blocks().size(), 0);
  decode(d, best.index, k);
  Partition out = finish(g, p, mode, d, k, best.key);
  out.method = "brute-force";
  out.stats.nodes = total;
  out.stats.wall_ms = elapsed_ms(t0);
  return out;
}

WishboneWeights WishboneWeights::from_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in [0, 1]");
  const auto a = static_cast<std::int64_t>(std::llround(alpha * 1000.0));
  return {a, 1000 - a};
}

std::string WishboneWeights::label() const {
  auto w = [](std::int64_t milli) {
    std::string s = format_fixed(milli, 3);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
  };
  return "Wishbone(" + w(alpha_milli) + "," + w(beta_milli) + ")";
}

std::int64_t wishbone_value(const FlowGraph& g, const Assignment& a, const ProfileSet& p,
                            const WishboneWeights& w) {
  check_assignment(g, a);
  std::int64_t cpu = 0, net = 0;
  const auto& devs = g.devices();
  for (const auto& b : g.blocks()) {
    cpu += block_compute_time(b, devs[static_cast<std::size_t>(a[static_cast<std::size_t>(b.id)])], p).us;
  }
  for (const auto& e : g.edges()) {
    net += profiles::network_time(e.payload_bytes, devs[static_cast<std::size_t>(a[static_cast<std::size_t>(e.from)])],
                                  devs[static_cast<std::size_t>(a[static_cast<std::size_t>(e.to)])], p)
               .us;
  }
  return w.alpha_milli * cpu + w.beta_milli * net;
}

Partition solve_wishbone(const FlowGraph& g, const ProfileSet& p, const WishboneWeights& w, Objective mode) {
  if (w.alpha_milli < 0 || w.beta_milli < 0 || w.alpha_milli + w.beta_milli <= 0) {
    throw Error(ErrorKind::InvalidArgument, "Wishbone weights must be non-negative and not both zero");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const CostTable table = CostTable::build(g, p);
  const Dense d = make_wishbone_dense(g, table, w);
  BranchAndBound bb(d);
  std::vector<int> k = bb.run();
  Assignment a = to_devices(g, k);
  if (wishbone_value(g, a, p, w) * d.fold + cross_edges(g, a) != bb.best().a) {
    invariant("Wishbone objective mismatch");
  }
  Partition out;
  out.mode = mode;
  out.method = w.label();
  out.assignment = a;
  out.value = mode == Objective::Latency ? evaluate_latency(g, a, p).us : evaluate_energy(g, a, p).pj;
  out.cross_edges = cross_edges(g, a);
  out.breakdown = breakdown(g, a, p, mode);
  out.stats.nodes = bb.nodes();
  out.stats.wall_ms = elapsed_ms(t0);
  return out;
}

Assignment brute_force_wishbone(const FlowGraph& g, const ProfileSet& p, const WishboneWeights& w) {
  const std::uint64_t total = search_space(g);
  if (total > kBruteForceLimit) throw Error(ErrorKind::SearchSpaceTooLarge, "SearchSpaceTooLarge");
  Dense shape;
  shape.g = &g;
  for (const auto& b : g.blocks()) {
    if (b.movable()) shape.movable.push_back(b.id);
  }
  std::vector<int> k(g.blocks().size(), 0);
  Assignment best;
  std::pair<std::int64_t, int> best_key{kInf, 0};
  for (std::uint64_t i = 0; i < total; ++i) {
    decode(shape, i, k);
    Assignment a = to_devices(g, k);
    std::pair<std::int64_t, int> key{wishbone_value(g, a, p, w), cross_edges(g, a)};
    if (key < best_key) {
      best_key = key;
      best = std::move(a);
    }
  }
  return best;
}

}  // namespace edgeprog::partitioner
