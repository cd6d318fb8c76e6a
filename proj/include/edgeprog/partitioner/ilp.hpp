#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgeprog/partitioner/cost.hpp"

namespace edgeprog::partitioner {

enum class VarKind { X, Eps, Z };

// X(block, device): block runs on device.
// Eps(edge, from_device, to_device): product X(from, d1) * X(to, d2).
// Z: the makespan bound (latency mode).
struct Variable {
  VarKind kind = VarKind::X;
  int block = -1;    // X; Eps: the edge's producer
  int device = -1;
  int edge = -1;     // Eps only
  int block2 = -1;   // Eps: the edge's consumer
  int device2 = -1;
  std::string name;
};

enum class Sense { Le, Ge, Eq };

struct LinearTerm {
  int var = 0;
  std::int64_t coef = 0;
};

enum class Family { Assignment, EpsLeFrom, EpsLeTo, EpsGeSum, EpsGeZero, Path };

struct Constraint {
  Family family = Family::Assignment;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::Le;
  std::int64_t rhs = 0;
};

// Linearized placement model. Coefficients are integer microseconds
// (latency) or picojoules (energy).
class IlpModel {
 public:
  Objective mode() const { return mode_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return cons_; }
  const std::vector<LinearTerm>& objective() const { return obj_; }

  // Latency mode only: true when the path count exceeded the cap and no
  // path constraints were generated.
  bool path_free() const { return path_free_; }
  std::uint64_t path_count() const { return path_count_; }
  std::optional<int> z_var() const { return z_; }

  int x_var(int block, int device) const;               // -1 if absent
  int eps_var(int edge, int from_dev, int to_dev) const;  // -1 if absent
  std::size_t count(VarKind k) const;
  std::size_t count(Family f) const;

  // Integer point for an assignment: X from the assignment, every Eps set to
  // the product of its two X values, Z (if any) at its smallest feasible value.
  std::vector<std::int64_t> point(const Assignment& a) const;

  bool satisfied(const Constraint& c, const std::vector<std::int64_t>& x) const;
  // Every constraint holds.
  bool check(const std::vector<std::int64_t>& x) const;
  std::int64_t objective_value(const std::vector<std::int64_t>& x) const;
  // Largest right-hand side any path constraint demands of Z at x.
  std::int64_t min_z(const std::vector<std::int64_t>& x) const;

 private:
  friend IlpModel build_ilp(const FlowGraph&, const ProfileSet&, Objective, std::size_t, bool);

  int add_var(Variable v);

  Objective mode_ = Objective::Latency;
  std::vector<Variable> vars_;
  std::vector<Constraint> cons_;
  std::vector<LinearTerm> obj_;
  bool path_free_ = false;
  std::uint64_t path_count_ = 0;
  std::optional<int> z_;
  std::vector<std::vector<int>> x_index_;                // [block][device] -> var
  std::vector<std::vector<std::vector<int>>> eps_index_;  // [edge][dev][dev] -> var
};

inline constexpr std::size_t kDefaultPathCap = 10000;

// Builds the model. In latency mode, graphs with more than `path_cap` full
// paths either get a path-free model (allow_path_free) or PathOverflow.
IlpModel build_ilp(const FlowGraph& g, const ProfileSet& p, Objective mode,
                   std::size_t path_cap = kDefaultPathCap, bool allow_path_free = true);

}  // namespace edgeprog::partitioner
