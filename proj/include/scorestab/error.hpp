#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scorestab {

enum class ErrorKind {
  BucketMismatch,
  ZeroBucket,
  InvalidDistribution,
  GridMismatch,
  NonPositiveDensity,
  DegenerateSample,
  OutOfRange,
  OutOfValidityRegion,
  NoSignChange,
  MultiCrossing,
  ZeroDenominator,
  NegativeDensity,
  DegenerateIdentical,
  ParseError,
  EmptyYear,
  EmptySeries,
  CutoffOutOfRange,
  InputError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BucketMismatch: return "BucketMismatch";
    case ErrorKind::ZeroBucket: return "ZeroBucket";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::OutOfValidityRegion: return "OutOfValidityRegion";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::MultiCrossing: return "MultiCrossing";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NegativeDensity: return "NegativeDensity";
    case ErrorKind::DegenerateIdentical: return "DegenerateIdentical";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyYear: return "EmptyYear";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::CutoffOutOfRange: return "CutoffOutOfRange";
    case ErrorKind::InputError: return "InputError";
  }
  return "Unknown";
}

/// All library failures surface as this exception; `kind()` is stable and
/// machine-readable, `what()` carries the human context.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace scorestab
