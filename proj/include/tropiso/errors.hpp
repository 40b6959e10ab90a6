#pragma once

#include <stdexcept>
#include <string>

namespace tropiso {

/// Base of every library error. `kind()` is a short machine-readable tag;
/// the CLI prints it as `ERROR:<kind>:<message>`.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& m) : Error("dimension", m) {}
};

class BottomEntryError : public Error {
 public:
  explicit BottomEntryError(const std::string& m) : Error("bottom-entry", m) {}
};

class SemiringMismatchError : public Error {
 public:
  explicit SemiringMismatchError(const std::string& m) : Error("semiring", m) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& m) : Error("parse", m) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& m) : Error("precondition", m) {}
  PreconditionError(std::string kind, const std::string& m) : Error(std::move(kind), m) {}
};

}  // namespace tropiso
