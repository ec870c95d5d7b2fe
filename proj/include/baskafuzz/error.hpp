#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace baskafuzz {

enum class ErrorKind {
  NotNormal,
  UnboundedSupport,
  NotQuasiConcave,
  CoreOutsideSupport,
  SupportMismatch,
  QuadratureFailure,
  DomainError,
  NegativeFunction,
  ModulusUnavailable,
  NotConcave,
  NotUnimodal,
  DegenerateCore,
  DegreeTooSmall,
  SchemaError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library exception. Validation may report several violations at once, so
/// an error carries a non-empty list of kinds; kind() is the first of them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  Error(std::vector<ErrorKind> kinds, const std::string& message);

  ErrorKind kind() const noexcept { return kinds_.front(); }
  const std::vector<ErrorKind>& kinds() const noexcept { return kinds_; }
  bool has(ErrorKind kind) const noexcept;

 private:
  std::vector<ErrorKind> kinds_;
};

}  // namespace baskafuzz
