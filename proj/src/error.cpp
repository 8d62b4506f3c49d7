#include "crsp/error.hpp"

namespace crsp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateWire: return "DuplicateWire";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownWire: return "UnknownWire";
    case ErrorCode::WireMismatch: return "WireMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidCoefficients: return "InvalidCoefficients";
    case ErrorCode::NotRealCoefficients: return "NotRealCoefficients";
    case ErrorCode::DegenerateTarget: return "DegenerateTarget";
    case ErrorCode::DegenerateSchmidt: return "DegenerateSchmidt";
    case ErrorCode::NoCorrectionExists: return "NoCorrectionExists";
    case ErrorCode::ChannelNotControllable: return "ChannelNotControllable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace crsp
