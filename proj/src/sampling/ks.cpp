#include "sampling/ks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/error.hpp"

namespace runlabel {

double ks_statistic(std::span<const double> sample_a, std::span<const double> sample_b) {
  if (sample_a.empty() || sample_b.empty()) {
    throw Error(ErrorCode::kEmptySample, "KS statistic needs two non-empty samples");
  }
  std::vector<double> a(sample_a.begin(), sample_a.end());
  std::vector<double> b(sample_b.begin(), sample_b.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0;
  // Walk the merged breakpoints; at each distinct value consume every copy
  // from both samples before comparing, so ties are evaluated after the step.
  while (i < a.size() || j < b.size()) {
    double x;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_value(long long n1, long long n2, double c_alpha) {
  if (n1 < 1 || n2 < 1) throw Error(ErrorCode::kInvalidArgument, "KS sample sizes must be >= 1");
  if (!(c_alpha > 0)) throw Error(ErrorCode::kInvalidArgument, "c(alpha) must be positive");
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return c_alpha * std::sqrt((a + b) / (a * b));
}

KsResult ks_test(std::span<const double> sample, std::span<const double> reference, double c_alpha) {
  KsResult r;
  r.statistic = ks_statistic(sample, reference);
  r.critical_value = ks_critical_value(static_cast<long long>(reference.size()),
                                       static_cast<long long>(sample.size()), c_alpha);
  r.accepted = r.statistic < r.critical_value;
  return r;
}

}  // namespace runlabel
