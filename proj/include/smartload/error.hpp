#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smartload {

enum class ErrorKind {
  InvalidArgument,
  Io,
  MalformedHeader,
  UnparseableDate,
  UnparseableValue,
  DuplicateDate,
  EmptyInput,
  NoFlank,
  NoHistory,
  InsufficientHistory,
  DegenerateSeries,
  NegativeValue,
  EmptyMatrix,
  DimensionMismatch,
  EmptySide,
  InsufficientData,
  LengthMismatch,
  ConstantTarget,
  ZeroNormalizer,
  InconsistentFixture,
  EmptyWindow,
  MalformedModel,
  MalformedConfig,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::UnparseableDate: return "UnparseableDate";
    case ErrorKind::UnparseableValue: return "UnparseableValue";
    case ErrorKind::DuplicateDate: return "DuplicateDate";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NoFlank: return "NoFlank";
    case ErrorKind::NoHistory: return "NoHistory";
    case ErrorKind::InsufficientHistory: return "InsufficientHistory";
    case ErrorKind::DegenerateSeries: return "DegenerateSeries";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptySide: return "EmptySide";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ConstantTarget: return "ConstantTarget";
    case ErrorKind::ZeroNormalizer: return "ZeroNormalizer";
    case ErrorKind::InconsistentFixture: return "InconsistentFixture";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::MalformedModel: return "MalformedModel";
    case ErrorKind::MalformedConfig: return "MalformedConfig";
  }
  return "Unknown";
}

/// Data-level failure raised by every module. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace smartload
