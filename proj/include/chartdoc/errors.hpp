#pragma once

#include <stdexcept>
#include <string>

namespace chartdoc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Validation-class errors: bad input shapes, bad files, bad arguments.
struct InvalidInput : Error {
  using Error::Error;
};
// Runtime-class errors: a well-formed request that cannot be satisfied.
struct RuntimeFailure : Error {
  using Error::Error;
};

struct CycleDetected : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct InsufficientEntities : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};
struct UnknownEntity : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct RootHasNoAncestors : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct InvalidShape : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct ParseError : InvalidInput {
  ParseError(std::size_t row, std::size_t col, const std::string& what)
      : InvalidInput("parse error at row " + std::to_string(row) + ", col " +
                     std::to_string(col) + ": " + what),
        row(row), col(col) {}
  std::size_t row;
  std::size_t col;
};
struct DuplicateLabel : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct IncompatibleShape : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct RenderOverflow : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};
struct RegistryParseError : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct InvariantViolation : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct NotApplicable : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};
struct EmptyFillDomain : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};
struct TypeMismatch : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct UnknownLabel : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct EmptyList : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};
struct DoesNotFit : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};
struct ManifestMismatch : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};
struct UnknownQuestionId : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};

}  // namespace chartdoc
