#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edgeprog {

enum class ErrorKind {
  // dsl
  SyntaxError,
  UnknownReference,
  DuplicateAlias,
  TypeMismatch,
  MissingRule,
  // flowgraph
  CyclicVSensor,
  MissingSize,
  EmptyCondition,
  // profiles
  SchemaError,
  MissingEntry,
  NegativeValue,
  UnknownLink,
  UnknownDevice,
  // partitioner
  IncompleteAssignment,
  PathOverflow,
  Infeasible,
  SearchSpaceTooLarge,
  InvalidArgument,
  // anything that should never happen on well-formed input
  InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the whole toolkit. `kind` is what callers and
// tests branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace edgeprog
