#pragma once

#include <stdexcept>
#include <string>

namespace qpmut {

enum class ErrorKind {
  Parse,
  Composition,
  Lookup,
  Precondition,
  Capacity,
  SearchBudget,
  Nontermination,
  Consistency,
  Dimensionality,
  Convention,
  UnsupportedPresentation,
  NotInClass,
  Ambiguity,
  Classification,
  Scope,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every domain failure raised by the library. The kind drives the CLI exit
/// status and the HTTP status code; the message is shown verbatim.
class QpError : public std::runtime_error {
 public:
  QpError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Size guards and exhausted search budgets, as opposed to violated
  /// mathematical preconditions.
  bool is_capacity() const noexcept {
    return kind_ == ErrorKind::Capacity || kind_ == ErrorKind::SearchBudget;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw QpError(kind, message);
}

}  // namespace qpmut
