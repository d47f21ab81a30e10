#pragma once

#include <span>

namespace runlabel {

/// Outcome of comparing a sample against a reference with the two-sample
/// Kolmogorov-Smirnov statistic. `accepted` means the distributions are
/// treated as similar: statistic < critical_value.
struct KsResult {
  double statistic = 0;
  double critical_value = 0;
  bool accepted = false;
};

/// sup_x |F_a(x) - F_b(x)| over the right-continuous empirical CDFs.
/// Throws Error(kEmptySample) if either sample is empty.
double ks_statistic(std::span<const double> sample_a, std::span<const double> sample_b);

/// Large-sample critical value c(alpha) * sqrt((n1 + n2) / (n1 * n2)).
/// Throws Error(kInvalidArgument) for n < 1 or c_alpha <= 0.
double ks_critical_value(long long n1, long long n2, double c_alpha);

KsResult ks_test(std::span<const double> sample, std::span<const double> reference, double c_alpha);

}  // namespace runlabel
