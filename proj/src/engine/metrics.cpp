#include "engine/metrics.hpp"

#include "core/error.hpp"

namespace runlabel {

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::kTruePositive: return "TP";
    case Verdict::kFalsePositive: return "FP";
    case Verdict::kFalseNegative: return "FN";
  }
  return "?";
}

Verdict classify(double iou_value, bool detected) noexcept {
  if (!detected) return Verdict::kFalseNegative;
  return iou_value >= kTruePositiveIou ? Verdict::kTruePositive : Verdict::kFalsePositive;
}

double f1_score(double precision, double recall) noexcept {
  const double sum = precision + recall;
  return sum == 0 ? 0.0 : 2 * precision * recall / sum;
}

Prf1 precision_recall_f1(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  if (tp < 0 || fp < 0 || fn < 0) throw Error(ErrorCode::kInvalidArgument, "negative match count");
  Prf1 m;
  if (tp + fp > 0) m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (m.precision && m.recall) m.f1 = f1_score(*m.precision, *m.recall);
  return m;
}

WorkloadEstimate workload_estimate(const WorkloadCounts& counts, const UnitCosts& costs) {
  if (counts.removals < 0 || counts.additions < 0 || counts.adjustments < 0 || counts.labels < 0) {
    throw Error(ErrorCode::kInvalidArgument, "workload counts must be non-negative");
  }
  if (costs.removal_s < 0 || costs.addition_s < 0 || costs.adjustment_s < 0 || costs.label_s < 0) {
    throw Error(ErrorCode::kInvalidArgument, "unit costs must be non-negative");
  }
  WorkloadEstimate w{counts, costs};
  w.removal_s = static_cast<double>(counts.removals) * costs.removal_s;
  w.addition_s = static_cast<double>(counts.additions) * costs.addition_s;
  w.adjustment_s = static_cast<double>(counts.adjustments) * costs.adjustment_s;
  w.label_s = static_cast<double>(counts.labels) * costs.label_s;
  w.total_s = w.removal_s + w.addition_s + w.adjustment_s + w.label_s;
  return w;
}

double unidentified_rate(std::int64_t total, std::int64_t identified) {
  if (total == 0) throw Error(ErrorCode::kZeroTotal, "no runners to rate");
  if (total < 0 || identified < 0 || identified > total) {
    throw Error(ErrorCode::kInvalidArgument, "identified runners must be within [0, total]");
  }
  return static_cast<double>(total - identified) / static_cast<double>(total) * 100.0;
}

}  // namespace runlabel
