#include "edgeprog/error.hpp"

namespace edgeprog {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownReference: return "UnknownReference";
    case ErrorKind::DuplicateAlias: return "DuplicateAlias";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::MissingRule: return "MissingRule";
    case ErrorKind::CyclicVSensor: return "CyclicVSensor";
    case ErrorKind::MissingSize: return "MissingSize";
    case ErrorKind::EmptyCondition: return "EmptyCondition";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::MissingEntry: return "MissingEntry";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::UnknownLink: return "UnknownLink";
    case ErrorKind::UnknownDevice: return "UnknownDevice";
    case ErrorKind::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorKind::PathOverflow: return "PathOverflow";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

}  // namespace edgeprog
