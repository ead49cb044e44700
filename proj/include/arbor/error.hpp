#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arbor {

enum class ErrorCode {
  kDegreeMismatch,
  kInvalidPermutation,
  kParse,
  kCapExceeded,
  kNotASubgroup,
  kNotTransitive,
  kNotPrime,
  kInvalidPair,
  kWordTooLong,
  kLetterOutOfRange,
  kShapeMismatch,
  kWrongDepth,
  kUnverifiedPattern,
  kNonUniformFibers,
  kZeroProbabilityHistory,
  kInvalidParams,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

/// Every recoverable failure in the library is reported through this type;
/// `code()` distinguishes the cases callers are expected to branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arbor
