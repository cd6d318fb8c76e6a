#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "edgeprog/dsl/ast.hpp"
#include "edgeprog/error.hpp"

namespace edgeprog::dsl {

enum class Severity { Error, Warning };

enum class DiagCode {
  SyntaxError,
  UnknownReference,
  DuplicateAlias,
  DuplicateName,
  TypeMismatch,
  MissingRule,
  MissingModel,
  MissingInput,
  MultipleEdge,
  CyclicVSensor,
  UnknownModel,
  AutoVSensor,
};

const char* to_string(DiagCode code);

struct Diagnostic {
  Severity severity = Severity::Error;
  DiagCode code = DiagCode::SyntaxError;
  std::string message;
  SourceLoc loc;
};

bool has_errors(const std::vector<Diagnostic>& diags);

// `file:line:col: severity: message`
std::string render(const Diagnostic& d, std::string_view file);

// Thrown by parse_program. Carries every error found, not only the first.
class ProgramError : public Error {
 public:
  explicit ProgramError(std::vector<Diagnostic> diags);

  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

}  // namespace edgeprog::dsl
