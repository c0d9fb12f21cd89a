#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zinv {

// Stable error identifiers. Every throw site in the library uses one of these;
// the CLI maps them to the "error" field of its JSON output.
enum class Err {
  MalformedInput,
  InvariantViolation,
  DegreeTooLarge,
  MissingOrientation,
  MissingLabels,
  NonzeroConstantTerm,
  UnknownVertex,
  NotApplicable,
  CancellationGap,
  EmptyV,
  DegenerateScale,
  OutsideNeighborhood,
  DegenerateDirection,
  NonUnit,
  SingularSample,
  CurvesTooClose,
  NotClosed,
  CoincidentPoints,
  BadXiParity,
};

constexpr std::string_view err_name(Err e) {
  switch (e) {
    case Err::MalformedInput: return "MalformedInput";
    case Err::InvariantViolation: return "InvariantViolation";
    case Err::DegreeTooLarge: return "DegreeTooLarge";
    case Err::MissingOrientation: return "MissingOrientation";
    case Err::MissingLabels: return "MissingLabels";
    case Err::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case Err::UnknownVertex: return "UnknownVertex";
    case Err::NotApplicable: return "NotApplicable";
    case Err::CancellationGap: return "CancellationGap";
    case Err::EmptyV: return "EmptyV";
    case Err::DegenerateScale: return "DegenerateScale";
    case Err::OutsideNeighborhood: return "OutsideNeighborhood";
    case Err::DegenerateDirection: return "DegenerateDirection";
    case Err::NonUnit: return "NonUnit";
    case Err::SingularSample: return "SingularSample";
    case Err::CurvesTooClose: return "CurvesTooClose";
    case Err::NotClosed: return "NotClosed";
    case Err::CoincidentPoints: return "CoincidentPoints";
    case Err::BadXiParity: return "BadXiParity";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Err code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace zinv
