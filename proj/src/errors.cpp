#include "entgram/errors.hpp"

namespace entgram {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::InfeasibleParams: return "InfeasibleParams";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::InfeasibleConstraint: return "InfeasibleConstraint";
  }
  return "Unknown";
}

}  // namespace entgram
