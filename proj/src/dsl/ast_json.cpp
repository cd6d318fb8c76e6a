#include <nlohmann/json.hpp>

#include "edgeprog/dsl/parser.hpp"

namespace edgeprog::dsl {

namespace {

using ojson = nlohmann::ordered_json;

ojson loc(const SourceLoc& l) { return {{"line", l.line}, {"col", l.col}}; }

ojson literal(const Literal& v) {
  return {{"kind", v.kind == Literal::Kind::Number ? "number" : "string"}, {"text", v.text}};
}

ojson cond(const CondExpr& e) {
  if (e.kind == CondExpr::Kind::Compare) {
    return {{"compare", {{"subject", e.cmp.subject.str()}, {"op", to_string(e.cmp.op)},
                         {"value", literal(e.cmp.value)}, {"loc", loc(e.cmp.loc)}}}};
  }
  ojson kids = ojson::array();
  for (const auto& c : e.children) kids.push_back(cond(c));
  return {{e.kind == CondExpr::Kind::And ? "and" : "or", kids}};
}

}  // namespace

std::string ast_to_json(const ProgramAst& ast) {
  ojson j;
  j["name"] = ast.name;
  ojson devices = ojson::array();
  for (const auto& d : ast.devices) {
    devices.push_back({{"alias", d.alias}, {"platform", d.platform_name}, {"interfaces", d.interfaces},
                       {"loc", loc(d.loc)}});
  }
  j["devices"] = devices;
  ojson vsensors = ojson::array();
  for (const auto& v : ast.vsensors) {
    ojson stages = ojson::array();
    for (const auto& s : v.stages) {
      stages.push_back({{"name", s.name}, {"model", s.model}, {"args", s.model_args}});
    }
    ojson inputs = ojson::array();
    for (const auto& r : v.inputs) inputs.push_back(r.str());
    ojson expected = ojson::array();
    for (const auto& e : v.expected_values) expected.push_back(literal(e));
    vsensors.push_back({{"name", v.name}, {"auto", v.auto_infer}, {"groups", v.groups}, {"stages", stages},
                        {"inputs", inputs}, {"output_type", v.output_type}, {"expected", expected},
                        {"loc", loc(v.loc)}});
  }
  j["vsensors"] = vsensors;
  ojson rules = ojson::array();
  for (const auto& r : ast.rules) {
    ojson actions = ojson::array();
    for (const auto& a : r.actions) {
      actions.push_back({{"device", a.device}, {"action", a.action}, {"args", a.args}, {"loc", loc(a.loc)}});
    }
    ojson rule = {{"condition", cond(r.condition)}, {"actions", actions}};
    if (r.interval_ms) rule["interval_ms"] = *r.interval_ms;
    rule["loc"] = loc(r.loc);
    rules.push_back(rule);
  }
  j["rules"] = rules;
  return j.dump(2) + "\n";
}

}  // namespace edgeprog::dsl
