#include "costens/error.hpp"

namespace costens {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::MissingTargetColumn: return "MissingTargetColumn";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::InvalidFraction: return "InvalidFraction";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyData: return "EmptyData";
    case ErrorCode::AllWeightsZero: return "AllWeightsZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MaskMismatch: return "MaskMismatch";
    case ErrorCode::SingleClassData: return "SingleClassData";
    case ErrorCode::WeakLearnerFailure: return "WeakLearnerFailure";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::InvalidCostMatrix: return "InvalidCostMatrix";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace costens
