#include "cmclab/error.hpp"

namespace cmclab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AntipodalPoints: return "AntipodalPoints";
    case ErrorCode::DegenerateBase: return "DegenerateBase";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NonPositiveU: return "NonPositiveU";
    case ErrorCode::InconsistentMeanCurvature: return "InconsistentMeanCurvature";
    case ErrorCode::AxisCollision: return "AxisCollision";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::NonPositiveU0: return "NonPositiveU0";
    case ErrorCode::BranchMismatch: return "BranchMismatch";
    case ErrorCode::Breakdown: return "Breakdown";
    case ErrorCode::NonPositiveW: return "NonPositiveW";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::NoContact: return "NoContact";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::NoSuchCap: return "NoSuchCap";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace cmclab
