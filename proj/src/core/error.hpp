#pragma once

#include <stdexcept>
#include <string>

namespace runlabel {

// Numeric values are part of the C ABI (see include/runlabel.h); append only.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kMalformedDocument = 2,
  kIo = 3,
  kNotFound = 4,
  kConflict = 5,
  kInternal = 6,

  kDegenerateBox = 10,
  kNegativeCoordinate = 11,
  kMalformedTime = 12,
  kInvalidIdentity = 13,
  kInvalidTrack = 14,
  kInvalidConfidence = 15,

  kMissingColumn = 20,
  kMalformedRow = 21,
  kDuplicateBib = 22,
  kNonDivisorFps = 23,
  kEmptyManifest = 24,
  kMalformedManifest = 25,

  kComponentOutOfRange = 30,
  kEmptySample = 31,
  kInsufficientDistinctScores = 32,

  kUndefinedMetric = 40,
  kZeroTotal = 41,

  kNonMonotoneSplit = 50,
  kInsufficientSplits = 51,
  kCheckpointOutOfRange = 52,
  kUnknownLocation = 53,
  kDimensionMismatch = 54,
  kEmptyGallery = 55,
  kUndecodableImage = 56,

  kPortInUse = 60,
  kMissingDataRoot = 61,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace runlabel
