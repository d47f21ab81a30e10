#include "engine/report.hpp"

#include <cmath>

#include "core/error.hpp"

namespace runlabel {
namespace {

Json optional_metric(const std::optional<double>& v) {
  return v ? Json(round4(*v)) : Json(nullptr);
}

}  // namespace

double round4(double v) { return std::round(v * 1e4) / 1e4; }

Json dense_boxes_to_json(const DenseBoxes& boxes, bool round_export) {
  Json out = Json::array();
  for (const auto& [f, box] : boxes) {
    Json b;
    if (round_export) {
      const auto r = round_half_up(box);
      b = Json::array({r[0], r[1], r[2], r[3]});
    } else {
      b = box_to_json(box);
    }
    out.push_back({{"frame_index", f}, {"box", std::move(b)}});
  }
  return out;
}

Json link_result_to_json(const LinkResult& result) {
  Json amb = Json::array();
  for (const auto& a : result.ambiguities) {
    Json ids = Json::array();
    for (const auto& id : a.identities) ids.push_back(id.str());
    amb.push_back({{"detection_index", a.detection_index},
                   {"frame_index", a.frame_index},
                   {"identities", std::move(ids)}});
  }
  return {{"detections", detections_to_json(result.accepted)},
          {"source_index", result.source_index},
          {"ambiguities", std::move(amb)}};
}

Json prf1_to_json(const Prf1& m) {
  return {{"precision", optional_metric(m.precision)},
          {"recall", optional_metric(m.recall)},
          {"f1", optional_metric(m.f1)}};
}

Json workload_to_json(const WorkloadEstimate& w) {
  return {{"counts",
           {{"removals", w.counts.removals},
            {"additions", w.counts.additions},
            {"adjustments", w.counts.adjustments},
            {"labels", w.counts.labels}}},
          {"unit_costs_s",
           {{"removal", w.costs.removal_s},
            {"addition", w.costs.addition_s},
            {"adjustment", w.costs.adjustment_s},
            {"label", w.costs.label_s}}},
          {"removal_s", w.removal_s},
          {"addition_s", w.addition_s},
          {"adjustment_s", w.adjustment_s},
          {"label_s", w.label_s},
          {"total_s", w.total_s}};
}

UnitCosts unit_costs_from_json(const Json& j, UnitCosts base) {
  if (j.is_null()) return base;
  if (!j.is_object()) throw Error(ErrorCode::kMalformedDocument, "unit_costs must be an object");
  auto take = [&](const char* key, double& dst) {
    if (auto it = j.find(key); it != j.end()) {
      if (!it->is_number()) throw Error(ErrorCode::kMalformedDocument, std::string("unit cost ") + key + " must be a number");
      dst = it->get<double>();
    }
  };
  take("removal", base.removal_s);
  take("addition", base.addition_s);
  take("adjustment", base.adjustment_s);
  take("label", base.label_s);
  return base;
}

Json evaluate_to_json(const GroundTruth& ground_truth, const std::vector<Detection>& predictions,
                      const UnitCosts& costs) {
  const auto report = match_frames(ground_truth, predictions);
  const auto metrics = precision_recall_f1(report.tp, report.fp, report.fn);
  const auto workload = workload_estimate(workload_counts(report, predictions), costs);

  Json assignments = Json::array();
  for (const auto& a : report.assignments) {
    assignments.push_back({{"frame_index", a.frame_index},
                           {"ground_truth", a.ground_truth_identity ? Json(a.ground_truth_identity->str()) : Json(nullptr)},
                           {"detection_index", a.detection_index ? Json(*a.detection_index) : Json(nullptr)},
                           {"iou", round4(a.iou)},
                           {"verdict", verdict_name(a.verdict)}});
  }
  Json out = {{"tp", report.tp}, {"fp", report.fp}, {"fn", report.fn}};
  out.update(prf1_to_json(metrics));
  out["workload"] = workload_to_json(workload);
  out["assignments"] = std::move(assignments);
  return out;
}

std::vector<Detection> predictions_from_json(const Json& j) {
  if (j.is_object() && j.contains("video_id")) return detections_from(document_from_json(j));
  return detections_from_json(j);
}

}  // namespace runlabel
