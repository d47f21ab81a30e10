#include "core/annotation.hpp"

#include <cmath>

#include "core/error.hpp"

namespace runlabel {

Track::Track(Identity identity, std::string video_id, std::vector<KeyframeAnnotation> keyframes)
    : identity_(std::move(identity)), video_id_(std::move(video_id)), keyframes_(std::move(keyframes)) {
  if (keyframes_.empty()) {
    throw Error(ErrorCode::kInvalidTrack, "track " + identity_.str() + " has no keyframes");
  }
  for (std::size_t i = 0; i < keyframes_.size(); ++i) {
    const auto f = keyframes_[i].frame.frame_index;
    if (f < 0) {
      throw Error(ErrorCode::kInvalidTrack, "negative frame index " + std::to_string(f));
    }
    if (i > 0 && f <= keyframes_[i - 1].frame.frame_index) {
      throw Error(ErrorCode::kInvalidTrack,
                  "track " + identity_.str() + ": keyframes not strictly increasing at frame " +
                      std::to_string(f));
    }
  }
}

void FrameRangeAnnotation::validate() const {
  if (start_frame < 0 || start_frame > end_frame) {
    throw Error(ErrorCode::kInvalidArgument, "frame range " + std::to_string(start_frame) + ".." +
                                                 std::to_string(end_frame) + " is invalid");
  }
}

void Detection::validate() const {
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfidence,
                "detection confidence must be in [0,1], got " + std::to_string(confidence));
  }
}

}  // namespace runlabel
