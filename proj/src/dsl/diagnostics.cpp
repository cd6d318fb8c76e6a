#include "edgeprog/dsl/diagnostics.hpp"

#include <algorithm>

namespace edgeprog::dsl {

const char* to_string(DiagCode code) {
  switch (code) {
    case DiagCode::SyntaxError: return "SyntaxError";
    case DiagCode::UnknownReference: return "UnknownReference";
    case DiagCode::DuplicateAlias: return "DuplicateAlias";
    case DiagCode::DuplicateName: return "DuplicateName";
    case DiagCode::TypeMismatch: return "TypeMismatch";
    case DiagCode::MissingRule: return "MissingRule";
    case DiagCode::MissingModel: return "MissingModel";
    case DiagCode::MissingInput: return "MissingInput";
    case DiagCode::MultipleEdge: return "MultipleEdge";
    case DiagCode::CyclicVSensor: return "CyclicVSensor";
    case DiagCode::UnknownModel: return "UnknownModel";
    case DiagCode::AutoVSensor: return "AutoVSensor";
  }
  return "Unknown";
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string render(const Diagnostic& d, std::string_view file) {
  std::string out(file);
  out += ':' + std::to_string(d.loc.line) + ':' + std::to_string(d.loc.col) + ": ";
  out += d.severity == Severity::Error ? "error" : "warning";
  out += ": ";
  out += d.message;
  return out;
}

namespace {

ErrorKind kind_of(DiagCode code) {
  switch (code) {
    case DiagCode::SyntaxError: return ErrorKind::SyntaxError;
    case DiagCode::UnknownReference: return ErrorKind::UnknownReference;
    case DiagCode::DuplicateAlias:
    case DiagCode::DuplicateName:
    case DiagCode::MultipleEdge: return ErrorKind::DuplicateAlias;
    case DiagCode::TypeMismatch: return ErrorKind::TypeMismatch;
    case DiagCode::MissingRule: return ErrorKind::MissingRule;
    case DiagCode::CyclicVSensor: return ErrorKind::CyclicVSensor;
    default: return ErrorKind::SyntaxError;
  }
}

std::string summary(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == Severity::Error) {
      return std::to_string(d.loc.line) + ":" + std::to_string(d.loc.col) + ": " + d.message;
    }
  }
  return "invalid program";
}

DiagCode first_error(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == Severity::Error) return d.code;
  }
  return DiagCode::SyntaxError;
}

}  // namespace

ProgramError::ProgramError(std::vector<Diagnostic> diags)
    : Error(kind_of(first_error(diags)), summary(diags)), diags_(std::move(diags)) {}

}  // namespace edgeprog::dsl
