#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "core/annotation.hpp"

namespace runlabel {

using DenseBoxes = std::map<std::int64_t, BoundingBox>;

/// Densifies keyframes over every frame in [first, last]. Each corner moves
/// linearly between consecutive keyframes; keyframe frames return the
/// keyframe box exactly. Throws Error(kInvalidTrack) unless there is at
/// least one keyframe and frames strictly increase.
DenseBoxes interpolate_keyframes(std::span<const KeyframeAnnotation> keyframes);

inline DenseBoxes interpolate_track(const Track& track) {
  return interpolate_keyframes(track.keyframes());
}

}  // namespace runlabel
