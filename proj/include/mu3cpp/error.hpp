#ifndef MU3CPP_ERROR_HPP
#define MU3CPP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mu3 {

enum class ErrorCode {
  NotPrime,
  OrderTooLarge,
  InvalidArgument,
  FieldMismatch,
  DivisionByZero,
  NotOneModThree,
  NotPrimitiveCubeRoot,
  ZeroInput,
  DeltaNotInMu3,
  GammaDegenerate,
  HypothesisViolated,
  DNotDividing,
  MalformedTable,
  ZeroCValue,
  NotOneModNine,
  RNotScalarForm,
  CNotKernelValued,
  ParseError,
};

inline constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotOneModThree: return "NotOneModThree";
    case ErrorCode::NotPrimitiveCubeRoot: return "NotPrimitiveCubeRoot";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::DeltaNotInMu3: return "DeltaNotInMu3";
    case ErrorCode::GammaDegenerate: return "GammaDegenerate";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::DNotDividing: return "DNotDividing";
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::ZeroCValue: return "ZeroCValue";
    case ErrorCode::NotOneModNine: return "NotOneModNine";
    case ErrorCode::RNotScalarForm: return "RNotScalarForm";
    case ErrorCode::CNotKernelValued: return "CNotKernelValued";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is raised as this type; the code
/// identifies the violated precondition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Hypothesis violations (exit 3 in the CLI) as opposed to malformed input.
  bool is_hypothesis_violation() const noexcept {
    switch (code_) {
      case ErrorCode::NotOneModThree:
      case ErrorCode::NotPrimitiveCubeRoot:
      case ErrorCode::DeltaNotInMu3:
      case ErrorCode::GammaDegenerate:
      case ErrorCode::HypothesisViolated:
      case ErrorCode::DNotDividing:
      case ErrorCode::ZeroCValue:
      case ErrorCode::NotOneModNine:
      case ErrorCode::RNotScalarForm:
      case ErrorCode::CNotKernelValued:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace mu3

#endif  // MU3CPP_ERROR_HPP
