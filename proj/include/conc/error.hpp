#pragma once

#include <stdexcept>
#include <string>

namespace conc {

enum class Err {
  NotAProbability,
  InvalidParameter,
  EmptyCoordSet,
  IndexOutOfRange,
  TooLargeToEnumerate,
  NonIncreasingCuts,
  InvalidP,
  SpaceMismatch,
  PreconditionViolated,
  InternalContradiction,
  NotAnIndicator,
  UniversalityFailed,
  ParseError,
  IoError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NotAProbability: return "NotAProbability";
    case Err::InvalidParameter: return "InvalidParameter";
    case Err::EmptyCoordSet: return "EmptyCoordSet";
    case Err::IndexOutOfRange: return "IndexOutOfRange";
    case Err::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case Err::NonIncreasingCuts: return "NonIncreasingCuts";
    case Err::InvalidP: return "InvalidP";
    case Err::SpaceMismatch: return "SpaceMismatch";
    case Err::PreconditionViolated: return "PreconditionViolated";
    case Err::InternalContradiction: return "InternalContradiction";
    case Err::NotAnIndicator: return "NotAnIndicator";
    case Err::UniversalityFailed: return "UniversalityFailed";
    case Err::ParseError: return "ParseError";
    case Err::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Err code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace conc
