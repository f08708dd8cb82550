#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperdist {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Violation of an operation's precondition or a value invariant.
/// CLI exit code 1.
struct DomainError : Error {
  using Error::Error;
};

/// Malformed input text (workspace files, rationals, ket expressions).
/// CLI exit code 2.
struct ParseError : Error {
  using Error::Error;
};

struct UnknownLabel : DomainError {
  using DomainError::DomainError;
};

struct SpaceMismatch : DomainError {
  using DomainError::DomainError;
};

struct ArityMismatch : DomainError {
  using DomainError::DomainError;
};

/// Traditional normalisation applied to the zero subdistribution.
struct ZeroSubdistribution : DomainError {
  ZeroSubdistribution() : DomainError("ZeroSubdistribution: total mass is 0") {}
};

/// A joint distribution whose base marginal does not cover the whole
/// space; carries the uncovered labels.
struct IncompleteSupport : DomainError {
  explicit IncompleteSupport(std::string what, std::vector<std::string> missing_labels = {})
      : DomainError(std::move(what)), missing(std::move(missing_labels)) {}
  std::vector<std::string> missing;
};

struct NotOrthogonal : DomainError {
  using DomainError::DomainError;
};

struct ZeroValidity : DomainError {
  ZeroValidity() : DomainError("ZeroValidity: conditioning on a predicate of validity 0") {}
};

struct NotATest : DomainError {
  using DomainError::DomainError;
};

struct ZeroScoreMass : DomainError {
  ZeroScoreMass() : DomainError("ZeroScoreMass: all score-weighted mass is 0") {}
};

struct StateMismatch : DomainError {
  using DomainError::DomainError;
};

}  // namespace hyperdist
