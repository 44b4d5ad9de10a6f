#pragma once

#include <stdexcept>
#include <string>

namespace freeball {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  Dimension,
  Domain,
  Precondition,
  Parameter,
  Degenerate,
  Index,
  NotPositive,
  Singular,
  Irreducible,
  NumericalFailure,
  IncompleteDecomposition,
  Parse,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace freeball
