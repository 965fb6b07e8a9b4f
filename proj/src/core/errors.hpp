#pragma once

#include <stdexcept>
#include <string>

namespace ruinkit {

enum class ErrorCode {
  NegativeProbability,
  SumNotOne,
  SupportTooSmall,
  NetProfitViolated,
  DeflationResidual,
  NoConvergence,
  StructureViolation,
  DimensionMismatch,
  SingularSystem,
  IllConditioned,
  ImaginaryResidue,
  DegenerateRatio,
  InvalidAb0,
  ParseError,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::SumNotOne: return "SumNotOne";
    case ErrorCode::SupportTooSmall: return "SupportTooSmall";
    case ErrorCode::NetProfitViolated: return "NetProfitViolated";
    case ErrorCode::DeflationResidual: return "DeflationResidual";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::ImaginaryResidue: return "ImaginaryResidue";
    case ErrorCode::DegenerateRatio: return "DegenerateRatio";
    case ErrorCode::InvalidAb0: return "InvalidAb0";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Thrown by every fallible operation in the library. `code()` distinguishes
/// input-validation failures from numerical failures; what() carries the
/// offending values without repeating the code name.
class RuinError : public std::runtime_error {
 public:
  RuinError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ruinkit
