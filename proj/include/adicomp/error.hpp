#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adicomp {

enum class ErrorCode {
  InvalidRing,
  ParentMismatch,
  DivisionByZero,
  UnsupportedRing,
  BudgetExceeded,
  NotFree,
  PrecisionExceeded,
  NonSurjectiveReduction,
  IllDefined,
  NotAComplex,
  ParseError,
  TaskError,
  UnknownProfile,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
  case ErrorCode::InvalidRing: return "InvalidRing";
  case ErrorCode::ParentMismatch: return "ParentMismatch";
  case ErrorCode::DivisionByZero: return "DivisionByZero";
  case ErrorCode::UnsupportedRing: return "UnsupportedRing";
  case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  case ErrorCode::NotFree: return "NotFree";
  case ErrorCode::PrecisionExceeded: return "PrecisionExceeded";
  case ErrorCode::NonSurjectiveReduction: return "NonSurjectiveReduction";
  case ErrorCode::IllDefined: return "IllDefined";
  case ErrorCode::NotAComplex: return "NotAComplex";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::TaskError: return "TaskError";
  case ErrorCode::UnknownProfile: return "UnknownProfile";
  }
  return "Error";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace adicomp
