#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sampling/ks.hpp"
#include "sampling/location_scores.hpp"

namespace runlabel {

struct SampleSelection {
  std::vector<int> subset;  // ascending score values
  KsResult ks;              // subset against all scores
  std::uint64_t candidates_evaluated = 0;
};

/// Draws `iterations` seeded random k-subsets of the distinct values in
/// `all_scores` and keeps the one with the smallest KS statistic against
/// `all_scores`; ties go to the lexicographically smallest subset. The
/// acceptance flag uses ks_critical_value(|all_scores|, k, c_alpha).
///
/// Throws Error(kInsufficientDistinctScores) when k exceeds the number of
/// distinct values, Error(kInvalidArgument) for k < 1 or iterations < 1.
SampleSelection select_sample_scores(std::span<const int> all_scores, int k, double c_alpha,
                                     int iterations, std::uint64_t seed);

/// Same objective, evaluated over every k-subset of the distinct values.
SampleSelection select_sample_scores_exhaustive(std::span<const int> all_scores, int k, double c_alpha);

/// KS comparison of one given subset against all scores.
KsResult evaluate_subset(std::span<const int> subset, std::span<const int> all_scores, double c_alpha);

/// For each chosen score, the location carrying it with the lowest location
/// number. Throws Error(kInvalidArgument) if a score has no location.
std::vector<int> locations_for_scores(const std::vector<LocationScore>& scores, std::span<const int> subset);

}  // namespace runlabel
