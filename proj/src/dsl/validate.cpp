#include <map>
#include <set>
#include <string>
#include <vector>

#include "edgeprog/dsl/parser.hpp"

namespace edgeprog::dsl {

namespace {

enum class ValueType { String, Number, Opaque };

ValueType classify(const std::string& type_name) {
  static const std::set<std::string> numeric = {"int_t",   "float_t", "double_t", "bool",
                                                "bool_t",  "uint_t",  "long_t",   "int8_t",
                                                "int16_t", "int32_t", "uint8_t",  "uint16_t"};
  if (type_name == "string_t") return ValueType::String;
  if (numeric.count(type_name)) return ValueType::Number;
  return ValueType::Opaque;
}

class Checker {
 public:
  explicit Checker(const ProgramAst& ast) : ast_(ast) {}

  std::vector<Diagnostic> run() {
    devices();
    vsensors();
    vsensor_cycles();
    rules();
    return std::move(diags_);
  }

 private:
  void error(DiagCode code, std::string message, SourceLoc loc) {
    diags_.push_back({Severity::Error, code, std::move(message), loc});
  }

  void devices() {
    std::set<std::string> aliases;
    int edges = 0;
    for (const auto& d : ast_.devices) {
      if (!aliases.insert(d.alias).second) {
        error(DiagCode::DuplicateAlias, "duplicate device alias '" + d.alias + "'", d.loc);
      }
      std::set<std::string> ifaces;
      for (const auto& i : d.interfaces) {
        if (!ifaces.insert(i).second) {
          error(DiagCode::DuplicateName,
                "interface '" + i + "' declared twice on device '" + d.alias + "'", d.loc);
        }
      }
      if (d.is_edge() && ++edges == 2) {
        error(DiagCode::MultipleEdge, "more than one Edge device declared ('" + d.alias + "')",
              d.loc);
      }
    }
    if (edges == 0) {
      // An implicit edge server named "Edge" is added during lowering.
      if (const DeviceDecl* clash = ast_.find_device("Edge")) {
        error(DiagCode::DuplicateAlias,
              "alias 'Edge' is reserved for the implicit edge server when no Edge device is "
              "declared",
              clash->loc);
      }
    }
  }

  bool interface_exists(const Ref& r) const {
    const DeviceDecl* d = ast_.find_device(r.device);
    if (!d) return false;
    return std::find(d->interfaces.begin(), d->interfaces.end(), r.name) != d->interfaces.end();
  }

  void check_ref(const Ref& r, const std::string& site) {
    if (r.is_vsensor()) {
      if (!ast_.find_vsensor(r.name)) {
        error(DiagCode::UnknownReference,
              "unknown virtual sensor '" + r.name + "' in " + site, r.loc);
      }
      return;
    }
    if (!ast_.find_device(r.device)) {
      error(DiagCode::UnknownReference, "unknown device '" + r.device + "' in " + site, r.loc);
    } else if (!interface_exists(r)) {
      error(DiagCode::UnknownReference,
            "device '" + r.device + "' has no interface '" + r.name + "' (" + site + ")", r.loc);
    }
  }

  void vsensors() {
    std::set<std::string> names;
    for (const auto& v : ast_.vsensors) {
      if (!names.insert(v.name).second) {
        error(DiagCode::DuplicateName, "duplicate virtual sensor '" + v.name + "'", v.loc);
      }
      if (ast_.find_device(v.name)) {
        error(DiagCode::DuplicateName,
              "virtual sensor '" + v.name + "' shadows a device alias", v.loc);
      }
      std::set<std::string> stage_names;
      for (const auto& s : v.stages) {
        if (!stage_names.insert(s.name).second) {
          error(DiagCode::DuplicateName,
                "stage '" + s.name + "' listed twice in '" + v.name + "'", s.loc);
        }
        if (!v.auto_infer && s.model.empty()) {
          error(DiagCode::MissingModel, "stage '" + s.name + "' of '" + v.name +
                                            "' has no setModel binding",
                s.loc);
        }
      }
      if (v.auto_infer && !v.stages.empty()) {
        error(DiagCode::SyntaxError, "AUTO virtual sensor '" + v.name + "' cannot list stages",
              v.loc);
      }
      if (!v.auto_infer && v.stages.empty()) {
        error(DiagCode::MissingModel, "virtual sensor '" + v.name + "' has no stages", v.loc);
      }
      if (v.inputs.empty()) {
        error(DiagCode::MissingInput, "virtual sensor '" + v.name + "' has no setInput", v.loc);
      }
      for (const auto& in : v.inputs) {
        if (in.is_vsensor() && in.name == v.name) {
          error(DiagCode::CyclicVSensor, "virtual sensor '" + v.name + "' consumes itself",
                in.loc);
          continue;
        }
        check_ref(in, "setInput of '" + v.name + "'");
      }
    }
  }

  void vsensor_cycles() {
    // 0 = unvisited, 1 = on stack, 2 = done
    std::map<std::string, int> state;
    std::set<std::string> reported;
    for (const auto& v : ast_.vsensors) visit(v, state, reported);
  }

  void visit(const VSensorDecl& v, std::map<std::string, int>& state,
             std::set<std::string>& reported) {
    int& st = state[v.name];
    if (st == 2) return;
    if (st == 1) {
      if (reported.insert(v.name).second) {
        error(DiagCode::CyclicVSensor,
              "virtual sensor '" + v.name + "' is part of a feedback cycle", v.loc);
      }
      return;
    }
    st = 1;
    for (const auto& in : v.inputs) {
      if (!in.is_vsensor() || in.name == v.name) continue;
      if (const VSensorDecl* dep = ast_.find_vsensor(in.name)) visit(*dep, state, reported);
    }
    state[v.name] = 2;
  }

  void rules() {
    if (ast_.rules.empty()) {
      error(DiagCode::MissingRule, "Rule section has no rules", {});
    }
    for (const auto& r : ast_.rules) {
      for (const Comparison* c : comparisons(r.condition)) comparison(*c);
      for (const auto& a : r.actions) {
        const DeviceDecl* d = ast_.find_device(a.device);
        if (!d) {
          error(DiagCode::UnknownReference, "unknown device '" + a.device + "' in action",
                a.loc);
        } else if (std::find(d->interfaces.begin(), d->interfaces.end(), a.action) ==
                   d->interfaces.end()) {
          error(DiagCode::UnknownReference,
                "device '" + a.device + "' has no action '" + a.action + "'", a.loc);
        }
      }
    }
  }

  void comparison(const Comparison& c) {
    const bool string_lit = c.value.kind == Literal::Kind::String;
    if (c.subject.is_vsensor()) {
      const VSensorDecl* v = ast_.find_vsensor(c.subject.name);
      if (!v) {
        check_ref(c.subject, "rule condition");
        return;
      }
      switch (classify(v->output_type)) {
        case ValueType::String:
          if (!string_lit) {
            error(DiagCode::TypeMismatch,
                  "'" + v->name + "' produces string_t but is compared to a number", c.loc);
          } else if (c.op != CmpOp::Eq && c.op != CmpOp::Ne) {
            error(DiagCode::TypeMismatch, "strings only support == and !=", c.loc);
          }
          break;
        case ValueType::Number:
          if (string_lit) {
            error(DiagCode::TypeMismatch, "'" + v->name + "' produces <" + v->output_type +
                                              "> but is compared to a string",
                  c.loc);
          }
          break;
        case ValueType::Opaque:
          error(DiagCode::TypeMismatch,
                "'" + v->name + "' output " +
                    (v->output_type.empty() ? std::string("is untyped")
                                            : "<" + v->output_type + ">") +
                    " and cannot be compared",
                c.loc);
          break;
      }
      return;
    }
    check_ref(c.subject, "rule condition");
    if (string_lit) {
      error(DiagCode::TypeMismatch,
            "interface '" + c.subject.str() + "' is numeric but is compared to a string", c.loc);
    }
  }

  const ProgramAst& ast_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> check_structure(const ProgramAst& ast) { return Checker(ast).run(); }

AlgorithmCatalog AlgorithmCatalog::builtin() {
  return AlgorithmCatalog({
      // feature extraction
      "MFCC", "FFT", "IFFT", "DWT", "Average", "MatMul", "LEC", "Framing", "PreEmphasis",
      "MelFilter", "PitchEstimation", "WindowSlicing",
      // classification / inference
      "GMM", "SVM", "RandomForest", "Clustering", "MNSVG",
      // combinators used by parallel stage groups
      "Concat", "Vote",
  });
}

std::vector<Diagnostic> validate_ast(const ProgramAst& ast, const AlgorithmCatalog& catalog) {
  std::vector<Diagnostic> diags = check_structure(ast);
  for (const auto& v : ast.vsensors) {
    if (v.auto_infer) {
      diags.push_back({Severity::Warning, DiagCode::AutoVSensor,
                       "AUTO virtual sensor '" + v.name +
                           "' is lowered as one opaque block; model training is not performed",
                       v.loc});
    }
    for (const auto& s : v.stages) {
      if (!s.model.empty() && !catalog.contains(s.model)) {
        diags.push_back({Severity::Warning, DiagCode::UnknownModel,
                         "UnknownModel(\"" + s.model + "\"): stage '" + s.name + "' of '" +
                             v.name + "' uses an algorithm outside the catalog",
                         s.loc});
      }
    }
  }
  return diags;
}

}  // namespace edgeprog::dsl
