#include "core/error.hpp"

namespace runlabel {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kConflict: return "Conflict";
    case ErrorCode::kInternal: return "Internal";
    case ErrorCode::kDegenerateBox: return "DegenerateBox";
    case ErrorCode::kNegativeCoordinate: return "NegativeCoordinate";
    case ErrorCode::kMalformedTime: return "MalformedTime";
    case ErrorCode::kInvalidIdentity: return "InvalidIdentity";
    case ErrorCode::kInvalidTrack: return "InvalidTrack";
    case ErrorCode::kInvalidConfidence: return "InvalidConfidence";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kDuplicateBib: return "DuplicateBib";
    case ErrorCode::kNonDivisorFps: return "NonDivisorFps";
    case ErrorCode::kEmptyManifest: return "EmptyManifest";
    case ErrorCode::kMalformedManifest: return "MalformedManifest";
    case ErrorCode::kComponentOutOfRange: return "ComponentOutOfRange";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kInsufficientDistinctScores: return "InsufficientDistinctScores";
    case ErrorCode::kUndefinedMetric: return "UndefinedMetric";
    case ErrorCode::kZeroTotal: return "ZeroTotal";
    case ErrorCode::kNonMonotoneSplit: return "NonMonotoneSplit";
    case ErrorCode::kInsufficientSplits: return "InsufficientSplits";
    case ErrorCode::kCheckpointOutOfRange: return "CheckpointOutOfRange";
    case ErrorCode::kUnknownLocation: return "UnknownLocation";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyGallery: return "EmptyGallery";
    case ErrorCode::kUndecodableImage: return "UndecodableImage";
    case ErrorCode::kPortInUse: return "PortInUse";
    case ErrorCode::kMissingDataRoot: return "MissingDataRoot";
  }
  return "Unknown";
}

}  // namespace runlabel
