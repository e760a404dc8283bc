#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace baire {

enum class ParseErrorKind {
  MissingTransition,
  DuplicateTransition,
  UnknownSymbol,
  BadStateIndex,
  BadHeader,
  Malformed,
};

inline const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MissingTransition: return "MissingTransition";
    case ParseErrorKind::DuplicateTransition: return "DuplicateTransition";
    case ParseErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ParseErrorKind::BadStateIndex: return "BadStateIndex";
    case ParseErrorKind::BadHeader: return "BadHeader";
    case ParseErrorKind::Malformed: return "Malformed";
  }
  return "Unknown";
}

/// Automaton file rejected. `line()` is 1-based; 0 means end of input.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " +
                           to_string(kind) + ": " + what),
        kind_(kind),
        line_(line) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// An exponential oracle refused to run because its budget would be exceeded.
class SizeGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state-set argument that was required to be a loop (and contain the
/// given state) is not.
class BadLoop : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionViolated : public std::runtime_error {
 public:
  PreconditionViolated(const std::string& what, std::vector<std::string> diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

class AlphabetMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace baire
