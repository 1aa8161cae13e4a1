#include "conexp/error.hpp"

namespace conexp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::LostPositivity: return "LostPositivity";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::BetaZero: return "BetaZero";
    case ErrorCode::MissingExponents: return "MissingExponents";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace conexp
