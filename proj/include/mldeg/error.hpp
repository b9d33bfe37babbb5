#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mldeg {

enum class ErrorCode {
  NonUnitConstantTerm,
  InsufficientOrder,
  ZeroPolynomial,
  DegenerateElimination,
  NotSquarefree,
  PrecisionExhausted,
  UnsupportedDimension,
  DimensionMismatch,
  SubspaceMismatch,
  NotFullDimensional,
  FanNotRefining,
  SmoothnessHypothesisViolated,
  UnsupportedCone,
  OriginOnEdgeLine,
  TooLarge,
  InfinitelyManyCriticalPoints,
  DegenerateSystem,
  InvalidInput,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::InsufficientOrder: return "InsufficientOrder";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DegenerateElimination: return "DegenerateElimination";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SubspaceMismatch: return "SubspaceMismatch";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::FanNotRefining: return "FanNotRefining";
    case ErrorCode::SmoothnessHypothesisViolated: return "SmoothnessHypothesisViolated";
    case ErrorCode::UnsupportedCone: return "UnsupportedCone";
    case ErrorCode::OriginOnEdgeLine: return "OriginOnEdgeLine";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InfinitelyManyCriticalPoints: return "InfinitelyManyCriticalPoints";
    case ErrorCode::DegenerateSystem: return "DegenerateSystem";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mldeg
