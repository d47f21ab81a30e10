#pragma once

#include <cstddef>
#include <vector>

#include "core/annotation.hpp"

namespace runlabel {

/// A detection containing path points of more than one runner on its frame.
struct AmbiguousLink {
  std::size_t detection_index = 0;  // into the input detection list
  std::int64_t frame_index = 0;
  std::vector<Identity> identities;  // ascending
};

struct LinkResult {
  /// Surviving detections in input order. Unambiguous ones carry the runner's
  /// identity as label; ambiguous ones are kept unlabeled.
  std::vector<Detection> accepted;
  /// Input index of each accepted detection.
  std::vector<std::size_t> source_index;
  std::vector<AmbiguousLink> ambiguities;
};

/// Keeps a detection iff at least one path point of its frame lies inside or
/// on its box; everything else is dropped as a false positive.
LinkResult link_paths_to_detections(const PathSet& paths, const std::vector<Detection>& detections);

}  // namespace runlabel
