#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opcalc {

enum class ErrorCode {
  kZeroDivision,
  kTruncationExceeded,
  kNuMismatch,
  kDegreeZero,
  kNonConvergence,
  kUnfactoredDenominator,
  kDomainError,
  kNegativeValuation,
  kDegenerateOperator,
  kInvalidSpec,
  kInfiniteResidual,
  kNonHomogeneous,
  kNotRepresentable,
  kInexact,
  kParseError,
};

std::string_view error_code_name(ErrorCode code);

/// Every library failure is reported through this exception; `code()` is the
/// machine-readable part that the CLI forwards in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace opcalc
