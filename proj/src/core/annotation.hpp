#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/geometry.hpp"
#include "core/identity.hpp"

namespace runlabel {

inline constexpr int kSourceFps = 30;

struct FrameRef {
  std::string video_id;
  std::int64_t frame_index = 0;
  friend bool operator==(const FrameRef&, const FrameRef&) = default;
};

struct KeyframeAnnotation {
  FrameRef frame;
  BoundingBox box;
  friend bool operator==(const KeyframeAnnotation&, const KeyframeAnnotation&) = default;
};

/// A runner's sparse keyframes in one video. At least one keyframe, frame
/// indices strictly increasing.
class Track {
 public:
  /// Throws Error(kInvalidTrack) when the keyframe invariants fail.
  Track(Identity identity, std::string video_id, std::vector<KeyframeAnnotation> keyframes);

  const Identity& identity() const noexcept { return identity_; }
  const std::string& video_id() const noexcept { return video_id_; }
  const std::vector<KeyframeAnnotation>& keyframes() const noexcept { return keyframes_; }

  std::int64_t first_frame() const { return keyframes_.front().frame.frame_index; }
  std::int64_t last_frame() const { return keyframes_.back().frame.frame_index; }

  friend bool operator==(const Track&, const Track&) = default;

 private:
  Identity identity_;
  std::string video_id_;
  std::vector<KeyframeAnnotation> keyframes_;
};

struct FrameRangeAnnotation {
  Identity identity;
  std::string video_id;
  std::int64_t start_frame = 0;
  std::int64_t end_frame = 0;

  /// Throws Error(kInvalidArgument) unless 0 <= start_frame <= end_frame.
  void validate() const;

  friend bool operator==(const FrameRangeAnnotation&, const FrameRangeAnnotation&) = default;
};

struct Detection {
  FrameRef frame;
  BoundingBox box;
  double confidence = 1.0;
  std::optional<Identity> label;

  /// Throws Error(kInvalidConfidence) unless confidence is in [0, 1].
  void validate() const;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct PathPoint {
  std::int64_t frame_index = 0;
  double x = 0;
  double y = 0;
  friend bool operator==(const PathPoint&, const PathPoint&) = default;
};

using PathSet = std::map<Identity, std::vector<PathPoint>>;

/// Everything annotated for one video: keyframe tracks and frame ranges.
struct AnnotationDocument {
  std::string video_id;
  int fps_source = kSourceFps;
  std::vector<Track> tracks;
  std::vector<FrameRangeAnnotation> frame_ranges;

  friend bool operator==(const AnnotationDocument&, const AnnotationDocument&) = default;
};

}  // namespace runlabel
