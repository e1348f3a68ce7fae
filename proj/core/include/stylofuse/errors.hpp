#pragma once

#include <stdexcept>
#include <string>

namespace stylofuse {

enum class ErrorCode {
  MissingField,
  DuplicateId,
  InvalidLabel,
  LanguageMismatch,
  MalformedLine,
  InvalidCount,
  MissingEmbedding,
  DimensionMismatch,
  MalformedFile,
  BatchTooSmall,
  ShapeMismatch,
  StaleCache,
  EmptySplit,
  UnlabeledRecord,
  EmptyCorpus,
  SingleClass,
  EmptyData,
  LengthMismatch,
  EmptyInput,
  SplitMismatch,
  VersionMismatch,
  CorruptFile,
  IoError,
  InvalidConfig,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::LanguageMismatch: return "LanguageMismatch";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::MissingEmbedding: return "MissingEmbedding";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::BatchTooSmall: return "BatchTooSmall";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::StaleCache: return "StaleCache";
    case ErrorCode::EmptySplit: return "EmptySplit";
    case ErrorCode::UnlabeledRecord: return "UnlabeledRecord";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::EmptyData: return "EmptyData";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::SplitMismatch: return "SplitMismatch";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "UnknownError";
}

/// Exception carrying a machine-checkable code plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stylofuse
