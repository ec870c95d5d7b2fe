#include "baskafuzz/error.hpp"

#include <algorithm>
#include <utility>

namespace baskafuzz {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::UnboundedSupport: return "UnboundedSupport";
    case ErrorKind::NotQuasiConcave: return "NotQuasiConcave";
    case ErrorKind::CoreOutsideSupport: return "CoreOutsideSupport";
    case ErrorKind::SupportMismatch: return "SupportMismatch";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NegativeFunction: return "NegativeFunction";
    case ErrorKind::ModulusUnavailable: return "ModulusUnavailable";
    case ErrorKind::NotConcave: return "NotConcave";
    case ErrorKind::NotUnimodal: return "NotUnimodal";
    case ErrorKind::DegenerateCore: return "DegenerateCore";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kinds_{kind} {}

Error::Error(std::vector<ErrorKind> kinds, const std::string& message)
    : std::runtime_error(message), kinds_(std::move(kinds)) {
  if (kinds_.empty()) kinds_.push_back(ErrorKind::InvalidArgument);
}

bool Error::has(ErrorKind kind) const noexcept {
  return std::find(kinds_.begin(), kinds_.end(), kind) != kinds_.end();
}

}  // namespace baskafuzz
