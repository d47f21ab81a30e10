#pragma once

// JSON renderings of engine results, shared by the HTTP service and the C API.

#include <vector>

#include "core/json_io.hpp"
#include "engine/interpolate.hpp"
#include "engine/linking.hpp"
#include "engine/matching.hpp"
#include "engine/metrics.hpp"

namespace runlabel {

/// Metric values are reported with four decimals.
double round4(double v);

/// [{"frame_index", "box"}] in frame order. With `round_export` every corner
/// is rounded half-up to an integer.
Json dense_boxes_to_json(const DenseBoxes& boxes, bool round_export = false);

Json link_result_to_json(const LinkResult& result);

Json prf1_to_json(const Prf1& m);
Json workload_to_json(const WorkloadEstimate& w);
UnitCosts unit_costs_from_json(const Json& j, UnitCosts base = {});

/// Full evaluation report: tp/fp/fn, p/r/f1, workload and assignments.
Json evaluate_to_json(const GroundTruth& ground_truth, const std::vector<Detection>& predictions,
                      const UnitCosts& costs);

/// Predictions given either as a detections list or as an annotation
/// document (densified).
std::vector<Detection> predictions_from_json(const Json& j);

}  // namespace runlabel
