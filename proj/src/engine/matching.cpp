#include "engine/matching.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "engine/interpolate.hpp"

namespace runlabel {

GroundTruth ground_truth_from(const AnnotationDocument& doc) {
  GroundTruth gt;
  for (const auto& track : doc.tracks) {
    for (const auto& [f, box] : interpolate_track(track)) gt[f].push_back({track.identity(), box});
  }
  return gt;
}

std::vector<Detection> detections_from(const AnnotationDocument& doc) {
  std::vector<Detection> out;
  for (const auto& [f, boxes] : ground_truth_from(doc)) {
    for (const auto& g : boxes) out.push_back({FrameRef{doc.video_id, f}, g.box, 1.0, g.identity});
  }
  return out;
}

MatchReport match_frames(const GroundTruth& ground_truth, const std::vector<Detection>& predictions) {
  std::map<std::int64_t, std::vector<std::size_t>> preds_by_frame;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    preds_by_frame[predictions[i].frame.frame_index].push_back(i);
  }
  std::set<std::int64_t> frames;
  for (const auto& [f, _] : ground_truth) frames.insert(f);
  for (const auto& [f, _] : preds_by_frame) frames.insert(f);

  static const std::vector<GroundTruthBox> kNoTruth;
  static const std::vector<std::size_t> kNoPreds;

  MatchReport report;
  for (const auto f : frames) {
    auto gt_it = ground_truth.find(f);
    const auto& truth = gt_it == ground_truth.end() ? kNoTruth : gt_it->second;
    auto pr_it = preds_by_frame.find(f);
    const auto& preds = pr_it == preds_by_frame.end() ? kNoPreds : pr_it->second;

    struct Pair {
      double iou;
      std::size_t g;
      std::size_t p;  // position within `preds`
    };
    std::vector<Pair> pairs;
    for (std::size_t g = 0; g < truth.size(); ++g) {
      for (std::size_t p = 0; p < preds.size(); ++p) {
        const double v = iou(truth[g].box, predictions[preds[p]].box);
        if (v > 0) pairs.push_back({v, g, p});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      return std::tie(b.iou, a.g, a.p) < std::tie(a.iou, b.g, b.p);
    });

    std::vector<bool> gt_used(truth.size(), false);
    std::vector<bool> pred_used(preds.size(), false);
    for (const auto& pair : pairs) {
      if (gt_used[pair.g] || pred_used[pair.p]) continue;
      gt_used[pair.g] = pred_used[pair.p] = true;
      const auto verdict = classify(pair.iou, true);
      if (verdict == Verdict::kTruePositive) {
        ++report.tp;
      } else {
        ++report.fp;
        ++report.fn;
        ++report.below_threshold;
      }
      report.assignments.push_back({f, pair.g, truth[pair.g].identity, preds[pair.p], pair.iou, verdict});
    }
    for (std::size_t p = 0; p < preds.size(); ++p) {
      if (pred_used[p]) continue;
      ++report.fp;
      report.assignments.push_back({f, std::nullopt, std::nullopt, preds[p], 0.0, Verdict::kFalsePositive});
    }
    for (std::size_t g = 0; g < truth.size(); ++g) {
      if (gt_used[g]) continue;
      ++report.fn;
      report.assignments.push_back({f, g, truth[g].identity, std::nullopt, 0.0, Verdict::kFalseNegative});
    }
  }
  return report;
}

WorkloadCounts workload_counts(const MatchReport& report, const std::vector<Detection>& predictions) {
  WorkloadCounts c;
  for (const auto& a : report.assignments) {
    const bool matched = a.ground_truth_index && a.detection_index;
    if (matched) {
      if (a.verdict != Verdict::kTruePositive) ++c.adjustments;
      if (!predictions[*a.detection_index].label) ++c.labels;
    } else if (a.detection_index) {
      ++c.removals;
    } else {
      ++c.additions;
      ++c.labels;
    }
  }
  return c;
}

}  // namespace runlabel
