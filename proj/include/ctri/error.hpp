#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctri {

enum class ErrorCode {
  AllCollinear,
  UnknownId,
  DuplicateId,
  DuplicatePoint,
  NonTriangularFace,
  BudgetExceeded,
  InvalidConstraints,
  PreconditionViolated,
  InternalAssertionFailed,
  TooLarge,
  ParseError,
  NonRational,
  UnknownName,
  Unsatisfiable,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AllCollinear: return "AllCollinear";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::NonTriangularFace: return "NonTriangularFace";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidConstraints: return "InvalidConstraints";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InternalAssertionFailed: return "InternalAssertionFailed";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonRational: return "NonRational";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the toolkit carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ctri
