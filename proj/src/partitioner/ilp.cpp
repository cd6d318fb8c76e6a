#include "edgeprog/partitioner/ilp.hpp"

#include <algorithm>
#include <limits>

#include "edgeprog/error.hpp"
#include "edgeprog/partitioner/evaluate.hpp"

namespace edgeprog::partitioner {

int IlpModel::add_var(Variable v) {
  vars_.push_back(std::move(v));
  return static_cast<int>(vars_.size()) - 1;
}

int IlpModel::x_var(int block, int device) const {
  if (block < 0 || static_cast<std::size_t>(block) >= x_index_.size()) return -1;
  const auto& row = x_index_[static_cast<std::size_t>(block)];
  if (device < 0 || static_cast<std::size_t>(device) >= row.size()) return -1;
  return row[static_cast<std::size_t>(device)];
}

int IlpModel::eps_var(int edge, int from_dev, int to_dev) const {
  if (edge < 0 || static_cast<std::size_t>(edge) >= eps_index_.size()) return -1;
  const auto& m = eps_index_[static_cast<std::size_t>(edge)];
  if (from_dev < 0 || static_cast<std::size_t>(from_dev) >= m.size()) return -1;
  const auto& row = m[static_cast<std::size_t>(from_dev)];
  if (to_dev < 0 || static_cast<std::size_t>(to_dev) >= row.size()) return -1;
  return row[static_cast<std::size_t>(to_dev)];
}

std::size_t IlpModel::count(VarKind k) const {
  return static_cast<std::size_t>(
      std::count_if(vars_.begin(), vars_.end(), [k](const Variable& v) { return v.kind == k; }));
}

std::size_t IlpModel::count(Family f) const {
  return static_cast<std::size_t>(
      std::count_if(cons_.begin(), cons_.end(), [f](const Constraint& c) { return c.family == f; }));
}

std::vector<std::int64_t> IlpModel::point(const Assignment& a) const {
  std::vector<std::int64_t> x(vars_.size(), 0);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const Variable& v = vars_[i];
    if (v.kind == VarKind::X) x[i] = a.at(static_cast<std::size_t>(v.block)) == v.device ? 1 : 0;
  }
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const Variable& v = vars_[i];
    if (v.kind != VarKind::Eps) continue;
    x[i] = x[static_cast<std::size_t>(x_var(v.block, v.device))] *
           x[static_cast<std::size_t>(x_var(v.block2, v.device2))];
  }
  if (z_) x[static_cast<std::size_t>(*z_)] = min_z(x);
  return x;
}

namespace {
std::int64_t dot(const std::vector<LinearTerm>& terms, const std::vector<std::int64_t>& x) {
  std::int64_t s = 0;
  for (const auto& t : terms) s += t.coef * x[static_cast<std::size_t>(t.var)];
  return s;
}
}  // namespace

bool IlpModel::satisfied(const Constraint& c, const std::vector<std::int64_t>& x) const {
  const std::int64_t lhs = dot(c.terms, x);
  switch (c.sense) {
    case Sense::Le: return lhs <= c.rhs;
    case Sense::Ge: return lhs >= c.rhs;
    case Sense::Eq: return lhs == c.rhs;
  }
  return false;
}

bool IlpModel::check(const std::vector<std::int64_t>& x) const {
  if (x.size() != vars_.size()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].kind != VarKind::Z && x[i] != 0 && x[i] != 1) return false;
  }
  return std::all_of(cons_.begin(), cons_.end(), [&](const Constraint& c) { return satisfied(c, x); });
}

std::int64_t IlpModel::objective_value(const std::vector<std::int64_t>& x) const { return dot(obj_, x); }

std::int64_t IlpModel::min_z(const std::vector<std::int64_t>& x) const {
  // Path constraints read  z - sum(...) >= 0,  so z must reach sum(...).
  std::int64_t best = 0;
  for (const auto& c : cons_) {
    if (c.family != Family::Path) continue;
    std::int64_t need = 0;
    for (const auto& t : c.terms) {
      if (z_ && t.var == *z_) continue;
      need -= t.coef * x[static_cast<std::size_t>(t.var)];
    }
    best = std::max(best, need);
  }
  return best;
}

IlpModel build_ilp(const FlowGraph& g, const ProfileSet& p, Objective mode, std::size_t path_cap,
                   bool allow_path_free) {
  const CostTable costs = CostTable::build(g, p);
  IlpModel m;
  m.mode_ = mode;
  const std::size_t ndev = g.devices().size();
  const auto& devs = g.devices();

  m.x_index_.assign(g.blocks().size(), std::vector<int>(ndev, -1));
  for (const auto& b : g.blocks()) {
    for (int d : b.placement.candidates) {
      m.x_index_[static_cast<std::size_t>(b.id)][static_cast<std::size_t>(d)] =
          m.add_var({VarKind::X, b.id, d, -1, -1, -1,
                     "X[" + std::to_string(b.id) + "," + devs[static_cast<std::size_t>(d)].alias + "]"});
    }
  }
  m.eps_index_.assign(g.edges().size(), std::vector<std::vector<int>>(ndev, std::vector<int>(ndev, -1)));
  for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
    const auto& e = g.edges()[ei];
    for (int du : g.block(e.from).placement.candidates) {
      for (int dv : g.block(e.to).placement.candidates) {
        m.eps_index_[ei][static_cast<std::size_t>(du)][static_cast<std::size_t>(dv)] =
            m.add_var({VarKind::Eps, e.from, du, static_cast<int>(ei), e.to, dv,
                       "eps[" + std::to_string(e.from) + "," + devs[static_cast<std::size_t>(du)].alias + ";" +
                           std::to_string(e.to) + "," + devs[static_cast<std::size_t>(dv)].alias + "]"});
      }
    }
  }

  // Each block runs on exactly one device.
  for (const auto& b : g.blocks()) {
    Constraint c{Family::Assignment, {}, Sense::Eq, 1};
    for (int d : b.placement.candidates) c.terms.push_back({m.x_var(b.id, d), 1});
    m.cons_.push_back(std::move(c));
  }
  // McCormick envelope of eps = X_u * X_v.
  for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
    const auto& e = g.edges()[ei];
    for (int du : g.block(e.from).placement.candidates) {
      for (int dv : g.block(e.to).placement.candidates) {
        const int eps = m.eps_var(static_cast<int>(ei), du, dv);
        const int xu = m.x_var(e.from, du);
        const int xv = m.x_var(e.to, dv);
        m.cons_.push_back({Family::EpsLeFrom, {{eps, 1}, {xu, -1}}, Sense::Le, 0});
        m.cons_.push_back({Family::EpsLeTo, {{eps, 1}, {xv, -1}}, Sense::Le, 0});
        m.cons_.push_back({Family::EpsGeSum, {{eps, 1}, {xu, -1}, {xv, -1}}, Sense::Ge, -1});
        m.cons_.push_back({Family::EpsGeZero, {{eps, 1}}, Sense::Ge, 0});
      }
    }
  }

  auto cand_pos = [&](int block, int dev) {
    const auto& c = g.block(block).placement.candidates;
    return static_cast<std::size_t>(std::find(c.begin(), c.end(), dev) - c.begin());
  };

  if (mode == Objective::Energy) {
    for (const auto& b : g.blocks()) {
      for (int d : b.placement.candidates) {
        std::int64_t w = costs.comp_pj[static_cast<std::size_t>(b.id)][cand_pos(b.id, d)];
        if (w != 0) m.obj_.push_back({m.x_var(b.id, d), w});
      }
    }
    for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
      const auto& e = g.edges()[ei];
      const std::size_t nv = g.block(e.to).placement.candidates.size();
      for (int du : g.block(e.from).placement.candidates) {
        for (int dv : g.block(e.to).placement.candidates) {
          std::int64_t w = costs.net_pj[ei][cand_pos(e.from, du) * nv + cand_pos(e.to, dv)];
          if (w != 0) m.obj_.push_back({m.eps_var(static_cast<int>(ei), du, dv), w});
        }
      }
    }
    return m;
  }

  m.z_ = m.add_var({VarKind::Z, -1, -1, -1, -1, -1, "z"});
  m.obj_.push_back({*m.z_, 1});
  m.path_count_ = flowgraph::count_paths(g);
  auto paths = flowgraph::enumerate_paths(g, path_cap);
  if (!paths) {
    if (!allow_path_free) {
      throw Error(ErrorKind::PathOverflow, "PathOverflow: " + std::to_string(m.path_count_) +
                                               " full paths exceed the cap of " + std::to_string(path_cap));
    }
    m.path_free_ = true;
    return m;
  }
  for (const auto& path : *paths) {
    // z - sum_i sum_s T^C X - sum_edges sum_{s,s'} T^N eps >= 0
    Constraint c{Family::Path, {{*m.z_, 1}}, Sense::Ge, 0};
    for (std::size_t i = 0; i < path.size(); ++i) {
      const int b = path[i];
      for (int d : g.block(b).placement.candidates) {
        std::int64_t w = costs.comp_us[static_cast<std::size_t>(b)][cand_pos(b, d)];
        if (w != 0) c.terms.push_back({m.x_var(b, d), -w});
      }
      if (i + 1 == path.size()) break;
      const int next = path[i + 1];
      int ei = -1;
      for (int cand : g.out_edges(b)) {
        if (g.edges()[static_cast<std::size_t>(cand)].to == next) ei = cand;
      }
      const std::size_t nv = g.block(next).placement.candidates.size();
      for (int du : g.block(b).placement.candidates) {
        for (int dv : g.block(next).placement.candidates) {
          std::int64_t w = costs.net_us[static_cast<std::size_t>(ei)][cand_pos(b, du) * nv + cand_pos(next, dv)];
          if (w != 0) c.terms.push_back({m.eps_var(ei, du, dv), -w});
        }
      }
    }
    m.cons_.push_back(std::move(c));
  }
  return m;
}

}  // namespace edgeprog::partitioner
