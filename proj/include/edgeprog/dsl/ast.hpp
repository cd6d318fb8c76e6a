#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace edgeprog::dsl {

struct SourceLoc {
  int line = 0;
  int col = 0;

  // Locations never participate in structural equality.
  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

enum class Platform { TelosB, MicaZ, RPI, Edge, Arduino, Other };

Platform platform_from_name(const std::string& name);

struct DeviceDecl {
  std::string alias;
  Platform platform = Platform::Other;
  std::string platform_name;  // spelled as written, e.g. "TelosB" or a custom name
  std::vector<std::string> interfaces;
  SourceLoc loc;

  bool is_edge() const { return platform == Platform::Edge; }
  bool operator==(const DeviceDecl&) const = default;
};

// `A.MIC` (device + interface) or `VoiceRecog` (a virtual sensor, device empty).
struct Ref {
  std::string device;
  std::string name;
  SourceLoc loc;

  bool is_vsensor() const { return device.empty(); }
  std::string str() const { return device.empty() ? name : device + "." + name; }
  bool operator==(const Ref&) const = default;
};

struct StageDecl {
  std::string name;
  std::string model;  // empty when no setModel was given
  std::vector<std::string> model_args;
  SourceLoc loc;

  bool operator==(const StageDecl&) const = default;
};

struct Literal {
  enum class Kind { Number, String };
  Kind kind = Kind::Number;
  std::string text;  // numeric lexeme or unescaped string contents

  bool operator==(const Literal&) const = default;
};

struct VSensorDecl {
  std::string name;
  bool auto_infer = false;
  // Stage graph as a sequence of groups; stages inside one group run in
  // parallel, consecutive groups are fully connected.
  std::vector<std::vector<std::string>> groups;
  std::vector<StageDecl> stages;  // flattened group order
  std::vector<Ref> inputs;
  std::string output_type;  // without angle brackets; empty if no setOutput
  std::vector<Literal> expected_values;
  SourceLoc loc;

  const StageDecl* find_stage(const std::string& stage) const;
  bool operator==(const VSensorDecl&) const = default;
};

enum class CmpOp { Eq, Ne, Lt, Gt, Le, Ge };

const char* to_string(CmpOp op);

struct Comparison {
  Ref subject;
  CmpOp op = CmpOp::Eq;
  Literal value;
  SourceLoc loc;

  bool operator==(const Comparison&) const = default;
};

struct CondExpr {
  enum class Kind { Compare, And, Or };
  Kind kind = Kind::Compare;
  Comparison cmp;                  // Kind::Compare
  std::vector<CondExpr> children;  // Kind::And / Kind::Or, size >= 2

  bool operator==(const CondExpr&) const = default;
};

// Leaves of a condition tree, left to right.
std::vector<const Comparison*> comparisons(const CondExpr& expr);

struct ActionRef {
  std::string device;
  std::string action;
  std::vector<std::string> args;  // opaque strings
  SourceLoc loc;

  bool operator==(const ActionRef&) const = default;
};

struct RuleDecl {
  CondExpr condition;
  std::vector<ActionRef> actions;
  std::optional<std::int64_t> interval_ms;  // from `@interval(ms)`
  SourceLoc loc;

  bool operator==(const RuleDecl&) const = default;
};

struct ProgramAst {
  std::string name;
  std::vector<DeviceDecl> devices;
  std::vector<VSensorDecl> vsensors;
  std::vector<RuleDecl> rules;

  const DeviceDecl* find_device(const std::string& alias) const;
  const VSensorDecl* find_vsensor(const std::string& name) const;
  bool operator==(const ProgramAst&) const = default;
};

}  // namespace edgeprog::dsl
