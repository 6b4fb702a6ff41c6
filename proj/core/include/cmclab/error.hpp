#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmclab {

/// Failure kinds raised by the library. The names are stable and appear
/// verbatim in CLI diagnostics.
enum class ErrorCode {
  AntipodalPoints,
  DegenerateBase,
  OutOfDomain,
  NonPositiveU,
  InconsistentMeanCurvature,
  AxisCollision,
  DomainViolation,
  DegenerateMetric,
  NonPositiveU0,
  BranchMismatch,
  Breakdown,
  NonPositiveW,
  InvalidGeometry,
  NoContact,
  NoBracket,
  NoSuchCap,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }

 private:
  ErrorCode code_;
};

}  // namespace cmclab
