#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "edgeprog/dsl/ast.hpp"
#include "edgeprog/dsl/diagnostics.hpp"

namespace edgeprog::dsl {

// Registered data-processing algorithms a VSensor stage may bind to.
class AlgorithmCatalog {
 public:
  AlgorithmCatalog() = default;
  explicit AlgorithmCatalog(std::set<std::string> models) : models_(std::move(models)) {}

  // The algorithms the toolkit ships profiles for.
  static AlgorithmCatalog builtin();

  bool contains(const std::string& model) const { return models_.count(model) != 0; }
  void add(std::string model) { models_.insert(std::move(model)); }
  const std::set<std::string>& models() const { return models_; }

 private:
  std::set<std::string> models_;
};

// Parses and resolves an EdgeProg program. Throws ProgramError carrying all
// syntax and resolution errors.
ProgramAst parse_program(std::string_view source);

// Structural checks plus catalog lookups. Never throws. A program is
// lowerable iff no returned diagnostic has Severity::Error.
std::vector<Diagnostic> validate_ast(const ProgramAst& ast, const AlgorithmCatalog& catalog);

// Canonical source form; parse_program(print_program(a)) == a.
std::string print_program(const ProgramAst& ast);

// Structured dump with two-space indentation; source locations included.
std::string ast_to_json(const ProgramAst& ast);

}  // namespace edgeprog::dsl
