#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crsp {

enum class ErrorCode {
  DuplicateWire,
  DimensionMismatch,
  UnknownWire,
  WireMismatch,
  NotNormalized,
  NonFinite,
  InvalidCoefficients,
  NotRealCoefficients,
  DegenerateTarget,
  DegenerateSchmidt,
  NoCorrectionExists,
  ChannelNotControllable,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace crsp
