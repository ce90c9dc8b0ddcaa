#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace palanatomy {

enum class ErrorCode {
  NotPrime,
  DegreeTooLarge,
  FieldTooLarge,
  OddExtensionDegree,
  ZeroElement,
  NotInU,
  ZeroConstantTerm,
  BadDegree,
  NotSymmetric,
  OddDegree,
  EvenDegree,
  ConstantNotInMinusU,
  MalformedFamily,
  CapExceeded,
  InvalidPartition,
  PreconditionViolated,
  DimensionTooSmall,
  IllegalAction,
  IllegalParams,
  GroupTooLarge,
  UnsupportedQuery,
  ParseError,
  FieldMismatch,
};

std::string_view to_string(ErrorCode code);

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace palanatomy
