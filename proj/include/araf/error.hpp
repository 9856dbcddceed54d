#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace araf {

enum class ErrorCode {
  InvalidArgument,
  FileNotFound,
  RaggedRow,
  UnknownLabelColumn,
  EmptyDataset,
  MixedColumn,
  MissingValue,
  ContinuousPresent,
  InvalidDataset,
  AllZero,
  EmptyInput,
  InsufficientRows,
  ZeroAntecedent,
  ZeroClass,
  SchemaMismatch,
  TooLarge,
  NonFinite,
  SingleClass,
  ConflictingFlags,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::UnknownLabelColumn: return "UnknownLabelColumn";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::MixedColumn: return "MixedColumn";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::ContinuousPresent: return "ContinuousPresent";
    case ErrorCode::InvalidDataset: return "InvalidDataset";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InsufficientRows: return "InsufficientRows";
    case ErrorCode::ZeroAntecedent: return "ZeroAntecedent";
    case ErrorCode::ZeroClass: return "ZeroClass";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::ConflictingFlags: return "ConflictingFlags";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace araf
