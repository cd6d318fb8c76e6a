#include "edgeprog/dsl/ast.hpp"

#include <algorithm>

namespace edgeprog::dsl {

Platform platform_from_name(const std::string& name) {
  if (name == "TelosB") return Platform::TelosB;
  if (name == "MicaZ") return Platform::MicaZ;
  if (name == "RPI") return Platform::RPI;
  if (name == "Edge") return Platform::Edge;
  if (name == "Arduino") return Platform::Arduino;
  return Platform::Other;
}

const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Gt: return ">";
    case CmpOp::Le: return "<=";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

const StageDecl* VSensorDecl::find_stage(const std::string& stage) const {
  auto it = std::find_if(stages.begin(), stages.end(),
                         [&](const StageDecl& s) { return s.name == stage; });
  return it == stages.end() ? nullptr : &*it;
}

const DeviceDecl* ProgramAst::find_device(const std::string& alias) const {
  auto it = std::find_if(devices.begin(), devices.end(),
                         [&](const DeviceDecl& d) { return d.alias == alias; });
  return it == devices.end() ? nullptr : &*it;
}

const VSensorDecl* ProgramAst::find_vsensor(const std::string& vs) const {
  auto it = std::find_if(vsensors.begin(), vsensors.end(),
                         [&](const VSensorDecl& v) { return v.name == vs; });
  return it == vsensors.end() ? nullptr : &*it;
}

namespace {
void collect(const CondExpr& e, std::vector<const Comparison*>& out) {
  if (e.kind == CondExpr::Kind::Compare) {
    out.push_back(&e.cmp);
    return;
  }
  for (const auto& c : e.children) collect(c, out);
}
}  // namespace

std::vector<const Comparison*> comparisons(const CondExpr& expr) {
  std::vector<const Comparison*> out;
  collect(expr, out);
  return out;
}

}  // namespace edgeprog::dsl
