#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "coreproj/coalition.hpp"

namespace coreproj {

/// The game has no core (it is not balanced), so anything measured against
/// the core is undefined.
class EmptyCoreError : public std::domain_error {
 public:
  explicit EmptyCoreError(const std::string& what) : std::domain_error(what) {}
};

/// A reaching-collection search was requested for a point already in the core.
class AlreadyInCoreError : public std::domain_error {
 public:
  explicit AlreadyInCoreError(const std::string& what) : std::domain_error(what) {}
};

/// A payment vector does not distribute exactly v(N).
class NotPreimputationError : public std::domain_error {
 public:
  explicit NotPreimputationError(const std::string& what) : std::domain_error(what) {}
};

/// The normals of a collection are linearly dependent. `dependent` holds a
/// dependent subcollection when one was found while checking.
class SingularCollectionError : public std::runtime_error {
 public:
  SingularCollectionError(const std::string& what, std::vector<Coalition> dependent)
      : std::runtime_error(what), dependent_(std::move(dependent)) {}

  const std::vector<Coalition>& dependent() const noexcept { return dependent_; }

 private:
  std::vector<Coalition> dependent_;
};

/// Malformed JSON input (game or market file).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A file could not be read.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coreproj
