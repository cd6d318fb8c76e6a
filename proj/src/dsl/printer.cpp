#include <sstream>
#include <string>

#include "edgeprog/dsl/parser.hpp"

namespace edgeprog::dsl {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + '"';
}

std::string literal(const Literal& l) {
  return l.kind == Literal::Kind::String ? quote(l.text) : l.text;
}

std::string stage_list(const VSensorDecl& v) {
  std::string out;
  for (std::size_t g = 0; g < v.groups.size(); ++g) {
    if (g) out += ", ";
    const auto& group = v.groups[g];
    if (group.size() == 1) {
      out += group.front();
      continue;
    }
    out += '{';
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i) out += ", ";
      out += group[i];
    }
    out += '}';
  }
  return out;
}

std::string expr(const CondExpr& e) {
  if (e.kind == CondExpr::Kind::Compare) {
    return e.cmp.subject.str() + " " + to_string(e.cmp.op) + " " + literal(e.cmp.value);
  }
  const char* op = e.kind == CondExpr::Kind::And ? " && " : " || ";
  std::string out;
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    if (i) out += op;
    const auto& c = e.children[i];
    if (c.kind == CondExpr::Kind::Compare) {
      out += expr(c);
    } else {
      out += "(" + expr(c) + ")";
    }
  }
  return out;
}

}  // namespace

std::string print_program(const ProgramAst& ast) {
  std::ostringstream os;
  os << "Application " << ast.name << "{\n";
  os << "\tConfiguration{\n";
  for (const auto& d : ast.devices) {
    os << "\t\t" << d.platform_name << ' ' << d.alias << '(';
    for (std::size_t i = 0; i < d.interfaces.size(); ++i) {
      if (i) os << ", ";
      os << d.interfaces[i];
    }
    os << ");\n";
  }
  os << "\t}\n";
  if (!ast.vsensors.empty()) {
    os << "\tImplementation{\n";
    for (const auto& v : ast.vsensors) {
      os << "\t\tVSensor " << v.name << '(' << (v.auto_infer ? "AUTO" : quote(stage_list(v)))
         << "){\n";
      if (!v.inputs.empty()) {
        os << "\t\t\t" << v.name << ".setInput(";
        for (std::size_t i = 0; i < v.inputs.size(); ++i) {
          if (i) os << ", ";
          os << v.inputs[i].str();
        }
        os << ");\n";
      }
      for (const auto& s : v.stages) {
        if (s.model.empty()) continue;
        os << "\t\t\t" << s.name << ".setModel(" << quote(s.model);
        for (const auto& a : s.model_args) os << ", " << quote(a);
        os << ");\n";
      }
      if (!v.output_type.empty()) {
        os << "\t\t\t" << v.name << ".setOutput(<" << v.output_type << '>';
        for (const auto& e : v.expected_values) os << ", " << literal(e);
        os << ");\n";
      }
      os << "\t\t}\n";
    }
    os << "\t}\n";
  }
  os << "\tRule{\n";
  for (const auto& r : ast.rules) {
    os << "\t\t";
    if (r.interval_ms) os << "@interval(" << *r.interval_ms << ") ";
    os << "IF(" << expr(r.condition) << ")\n\t\tTHEN(";
    for (std::size_t i = 0; i < r.actions.size(); ++i) {
      const auto& a = r.actions[i];
      if (i) os << " && ";
      os << a.device << '.' << a.action;
      if (!a.args.empty()) {
        os << '(';
        for (std::size_t j = 0; j < a.args.size(); ++j) {
          if (j) os << ", ";
          os << quote(a.args[j]);
        }
        os << ')';
      }
    }
    os << ");\n";
  }
  os << "\t}\n}\n";
  return os.str();
}

}  // namespace edgeprog::dsl
