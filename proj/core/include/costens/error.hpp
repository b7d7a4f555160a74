#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace costens {

enum class ErrorCode {
  FileNotFound,
  MalformedHeader,
  ValueOutOfRange,
  MissingTargetColumn,
  EmptyDataset,
  TooFewSamples,
  InvalidFraction,
  InvalidArgument,
  EmptyData,
  AllWeightsZero,
  DimensionMismatch,
  MaskMismatch,
  SingleClassData,
  WeakLearnerFailure,
  LengthMismatch,
  EmptyEnsemble,
  EmptyInput,
  EmptyMatrix,
  InvalidCostMatrix,
  SchemaMismatch,
  VersionMismatch,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for all library failures; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace costens
