#pragma once

#include <cstdint>
#include <optional>

namespace runlabel {

enum class Verdict { kTruePositive, kFalsePositive, kFalseNegative };

const char* verdict_name(Verdict v) noexcept;

/// A detection is a true positive when its IoU with the runner is at least 0.8.
inline constexpr double kTruePositiveIou = 0.8;

Verdict classify(double iou_value, bool detected) noexcept;

/// Precision and recall are absent when their denominator is zero; f1 is
/// present whenever both are, and 0 when p + r = 0.
struct Prf1 {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

Prf1 precision_recall_f1(std::int64_t tp, std::int64_t fp, std::int64_t fn);
double f1_score(double precision, double recall) noexcept;

/// Seconds per manual action. Defaults are configuration placeholders, not
/// measured values.
struct UnitCosts {
  double removal_s = 3;
  double addition_s = 8;
  double adjustment_s = 6;
  double label_s = 2;
};

struct WorkloadCounts {
  std::int64_t removals = 0;     // false positives on non-runners
  std::int64_t additions = 0;    // missed runners
  std::int64_t adjustments = 0;  // boxes on a runner but below the IoU bar
  std::int64_t labels = 0;       // bib labels typed in
};

struct WorkloadEstimate {
  WorkloadCounts counts;
  UnitCosts costs;
  double removal_s = 0;
  double addition_s = 0;
  double adjustment_s = 0;
  double label_s = 0;
  double total_s = 0;
};

/// Throws Error(kInvalidArgument) for negative counts or costs.
WorkloadEstimate workload_estimate(const WorkloadCounts& counts, const UnitCosts& costs);

/// Percentage of runners left unidentified. Throws Error(kZeroTotal) for
/// total == 0, Error(kInvalidArgument) unless 0 <= identified <= total.
double unidentified_rate(std::int64_t total, std::int64_t identified);

}  // namespace runlabel
