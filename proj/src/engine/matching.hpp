#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "core/annotation.hpp"
#include "engine/metrics.hpp"

namespace runlabel {

struct GroundTruthBox {
  Identity identity;
  BoundingBox box;
};

/// Ground-truth boxes per frame.
using GroundTruth = std::map<std::int64_t, std::vector<GroundTruthBox>>;

/// Densifies every track of the document into per-frame ground truth.
GroundTruth ground_truth_from(const AnnotationDocument& doc);

/// The same densified boxes as labeled detections with confidence 1, for
/// scoring one annotation against another.
std::vector<Detection> detections_from(const AnnotationDocument& doc);

/// One row of the per-frame assignment. A matched pair has both indices; an
/// unmatched prediction only `detection_index`; a missed runner only
/// `ground_truth_index`.
struct Assignment {
  std::int64_t frame_index = 0;
  std::optional<std::size_t> ground_truth_index;  // into GroundTruth[frame_index]
  std::optional<Identity> ground_truth_identity;
  std::optional<std::size_t> detection_index;  // into the predictions list
  double iou = 0;
  Verdict verdict = Verdict::kFalseNegative;
};

struct MatchReport {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  /// Matched pairs whose IoU fell below the true-positive bar. Each one counts
  /// as an FP for the prediction and an FN for the ground truth.
  std::int64_t below_threshold = 0;
  std::vector<Assignment> assignments;
};

/// Per frame, greedy one-to-one matching in descending IoU order over pairs
/// with positive overlap (ties by ground-truth index, then detection index).
/// Matched pairs are classified with classify(); leftovers are FP / FN.
/// Always tp + fn == #ground truth and tp + fp == #predictions.
MatchReport match_frames(const GroundTruth& ground_truth, const std::vector<Detection>& predictions);

/// Manual actions implied by a match: unmatched predictions are removed,
/// missed runners added, below-threshold pairs adjusted, and every kept or
/// added box without a label gets one.
WorkloadCounts workload_counts(const MatchReport& report, const std::vector<Detection>& predictions);

}  // namespace runlabel
