#include "sampling/selection.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <random>
#include <set>

#include "core/error.hpp"

namespace runlabel {
namespace {

// KS statistics are differences of i/n1 and j/n2; two subsets whose values
// agree to this tolerance are treated as tied.
constexpr double kTieTolerance = 1e-12;

std::vector<int> distinct_values(std::span<const int> all_scores, int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  std::set<int> distinct(all_scores.begin(), all_scores.end());
  if (static_cast<std::size_t>(k) > distinct.size()) {
    throw Error(ErrorCode::kInsufficientDistinctScores,
                "cannot choose " + std::to_string(k) + " of " + std::to_string(distinct.size()) +
                    " distinct scores");
  }
  return {distinct.begin(), distinct.end()};
}

std::vector<double> to_doubles(std::span<const int> v) { return {v.begin(), v.end()}; }

class BestSubset {
 public:
  explicit BestSubset(std::span<const int> all_scores) : reference_(to_doubles(all_scores)) {}

  void offer(const std::vector<int>& subset) {
    ++evaluated_;
    const auto sample = to_doubles(subset);
    const double d = ks_statistic(sample, reference_);
    if (best_.empty() || d < best_d_ - kTieTolerance ||
        (d <= best_d_ + kTieTolerance && subset < best_)) {
      best_d_ = d;
      best_ = subset;
    }
  }

  SampleSelection finish(std::span<const int> all_scores, double c_alpha) const {
    SampleSelection out;
    out.subset = best_;
    out.ks = evaluate_subset(best_, all_scores, c_alpha);
    out.candidates_evaluated = evaluated_;
    return out;
  }

 private:
  std::vector<double> reference_;
  std::vector<int> best_;
  double best_d_ = std::numeric_limits<double>::infinity();
  std::uint64_t evaluated_ = 0;
};

}  // namespace

KsResult evaluate_subset(std::span<const int> subset, std::span<const int> all_scores, double c_alpha) {
  const auto sample = to_doubles(subset);
  const auto reference = to_doubles(all_scores);
  return ks_test(sample, reference, c_alpha);
}

SampleSelection select_sample_scores(std::span<const int> all_scores, int k, double c_alpha,
                                     int iterations, std::uint64_t seed) {
  const auto distinct = distinct_values(all_scores, k);
  if (iterations < 1) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  ks_critical_value(static_cast<long long>(all_scores.size()), k, c_alpha);  // validates c_alpha

  std::mt19937_64 rng(seed);
  BestSubset best(all_scores);
  std::vector<int> subset;
  subset.reserve(static_cast<std::size_t>(k));
  for (int it = 0; it < iterations; ++it) {
    subset.clear();
    // std::sample over a sorted range yields an ascending selection.
    std::sample(distinct.begin(), distinct.end(), std::back_inserter(subset), k, rng);
    best.offer(subset);
  }
  return best.finish(all_scores, c_alpha);
}

SampleSelection select_sample_scores_exhaustive(std::span<const int> all_scores, int k, double c_alpha) {
  const auto distinct = distinct_values(all_scores, k);
  ks_critical_value(static_cast<long long>(all_scores.size()), k, c_alpha);

  const std::size_t n = distinct.size();
  const auto kk = static_cast<std::size_t>(k);
  // Guard against combinatorial blow-up; score sums live in [5,25] so real
  // inputs have at most 21 distinct values.
  double combos = 1;
  for (std::size_t i = 0; i < kk; ++i) combos = combos * static_cast<double>(n - i) / static_cast<double>(i + 1);
  if (combos > 5e7) {
    throw Error(ErrorCode::kInvalidArgument, "exhaustive search over too many subsets");
  }

  BestSubset best(all_scores);
  std::vector<std::size_t> idx(kk);
  for (std::size_t i = 0; i < kk; ++i) idx[i] = i;
  std::vector<int> subset(kk);
  while (true) {
    for (std::size_t i = 0; i < kk; ++i) subset[i] = distinct[idx[i]];
    best.offer(subset);
    // Next combination in lexicographic order.
    std::size_t i = kk;
    while (i > 0 && idx[i - 1] == n - kk + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < kk; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best.finish(all_scores, c_alpha);
}

std::vector<int> locations_for_scores(const std::vector<LocationScore>& scores, std::span<const int> subset) {
  std::vector<int> out;
  out.reserve(subset.size());
  for (int s : subset) {
    int best = 0;
    for (const auto& ls : scores) {
      if (ls.total == s && (best == 0 || ls.location_number < best)) best = ls.location_number;
    }
    if (best == 0) {
      throw Error(ErrorCode::kInvalidArgument, "no location has score " + std::to_string(s));
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace runlabel
