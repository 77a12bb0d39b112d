#pragma once

#include <stdexcept>
#include <string>

namespace polyslice {

enum class ErrorCode {
  ZeroVector,
  DimensionMismatch,
  DimensionOutOfRange,
  Unsupported,
  UnsupportedQuery,
  RegimeViolation,
  QuadratureFailure,
  NotIntegrable,
  InsufficientHits,
  DomainError,
  NotCritical,
  NoFlipFound,
  UnknownSuite,
  UnknownId,
  ResourceLimit,
  IOError,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polyslice
