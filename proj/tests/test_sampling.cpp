#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "core/json_io.hpp"
#include "oracles.hpp"
#include "sampling/ks.hpp"
#include "sampling/location_scores.hpp"
#include "sampling/selection.hpp"
#include "test_util.hpp"

using namespace runlabel;

namespace {

std::vector<LocationScore> all_locations() { return load_scores_csv(std::string(RUNLABEL_TEST_DATA) + "/location_scores.csv"); }

std::vector<double> as_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

// Frozen from the brute-force oracle below: D of the field-study subset is
// 26/210, and the best 6-subset of the distinct scores reaches 17/210.
constexpr double kChosenSubsetD = 26.0 / 210.0;
constexpr double kBestSubsetD = 17.0 / 210.0;

}  // namespace

TEST(LocationScore, Examples) {
  ScenarioScores x;
  x.lighting = 2;
  x.resolution = 5;
  x.recording_angle = 5;
  x.occlusion = 3;
  x.crowded_videos = 3;
  EXPECT_EQ(location_score(9, x).total, 18);

  ScenarioScores loc5;
  loc5.occlusion = 1;
  loc5.lighting = 3;
  loc5.recording_angle = 2;
  loc5.resolution = 1;
  loc5.crowded_videos = 1;
  EXPECT_EQ(location_score(5, loc5).total, 8);

  ScenarioScores best{5, 5, 5, 5, 5};
  EXPECT_EQ(location_score(1, best).total, 25);

  ScenarioScores zero{0, 5, 5, 5, 5};
  EXPECT_CODE(location_score(1, zero), kComponentOutOfRange);
  ScenarioScores six{6, 5, 5, 5, 5};
  EXPECT_CODE(location_score(1, six), kComponentOutOfRange);
  EXPECT_CODE(location_score(43, best), kComponentOutOfRange);
}

TEST(LocationScore, ScoresFile) {
  const auto scores = all_locations();
  ASSERT_EQ(scores.size(), 35u);
  EXPECT_EQ(scores.front().location_number, 5);
  EXPECT_EQ(scores.front().total, 8);
  std::set<int> distinct;
  for (const auto& s : scores) {
    EXPECT_EQ(s.total, s.lighting + s.resolution + s.recording_angle + s.occlusion + s.crowded_videos);
    EXPECT_GE(s.total, 5);
    EXPECT_LE(s.total, 25);
    distinct.insert(s.total);
  }
  EXPECT_EQ(distinct.size(), 16u);
  EXPECT_EQ(parse_scores_csv(write_scores_csv(scores)), scores);
}

TEST(LocationScore, ScoreColumnMustMatchSum) {
  EXPECT_CODE(parse_scores_csv("location,occlusion,lighting,recording_angle,resolution,crowded_videos,score\n"
                               "5,1,3,2,1,1,9\n"),
              kMalformedRow);
  EXPECT_CODE(parse_scores_csv("location,occlusion\n5,1\n"), kMissingColumn);
}

TEST(KsStatistic, Examples) {
  const std::vector<double> a{1, 2, 3};
  EXPECT_DOUBLE_EQ(ks_statistic(a, a), 0.0);
  EXPECT_DOUBLE_EQ(ks_statistic(std::vector<double>{0}, std::vector<double>{1}), 1.0);
  EXPECT_CODE(ks_statistic(std::vector<double>{}, a), kEmptySample);
}

TEST(KsStatistic, ChosenSubsetAgainstAllScores) {
  const auto all = as_doubles(score_totals(all_locations()));
  const std::vector<double> chosen{11, 15, 16, 17, 19, 23};
  const double d = ks_statistic(chosen, all);
  EXPECT_NEAR(d, oracle::ks_brute(chosen, all), 1e-15);
  EXPECT_NEAR(d, kChosenSubsetD, 1e-12);
  EXPECT_LT(d, ks_critical_value(35, 6, 1.63));
}

TEST(KsStatistic, MatchesBruteForceOnRandomSamples) {
  std::mt19937 rng(23);
  for (int n = 0; n < 2000; ++n) {
    std::vector<double> a(1 + rng() % 12), b(1 + rng() % 12);
    for (auto& v : a) v = static_cast<double>(rng() % 8);
    for (auto& v : b) v = static_cast<double>(rng() % 8);
    const double d = ks_statistic(a, b);
    ASSERT_NEAR(d, oracle::ks_brute(a, b), 1e-12);
    ASSERT_DOUBLE_EQ(d, ks_statistic(b, a));
    ASSERT_GE(d, 0.0);
    ASSERT_LE(d, 1.0);
    // Duplicating every value leaves the empirical CDF unchanged.
    auto doubled = a;
    doubled.insert(doubled.end(), a.begin(), a.end());
    ASSERT_DOUBLE_EQ(ks_statistic(a, doubled), 0.0);
  }
}

TEST(KsCriticalValue, Examples) {
  EXPECT_NEAR(ks_critical_value(35, 6, 1.63), 0.7202, 1e-4);
  EXPECT_NEAR(ks_critical_value(35, 6, 1.63), 1.63 * std::sqrt(41.0 / 210.0), 1e-15);
  EXPECT_DOUBLE_EQ(ks_critical_value(1, 1, 1), std::sqrt(2.0));
  EXPECT_NEAR(ks_critical_value(4, 4, 1.63), 1.1526, 1e-4);
  EXPECT_CODE(ks_critical_value(0, 4, 1.63), kInvalidArgument);
  EXPECT_CODE(ks_critical_value(4, 4, 0), kInvalidArgument);
}

TEST(KsCriticalValue, MonotoneDecreasing) {
  for (long long n1 = 1; n1 < 60; ++n1) {
    for (long long n2 = 1; n2 < 60; ++n2) {
      const double v = ks_critical_value(n1, n2, 1.63);
      ASSERT_LT(ks_critical_value(n1 + 1, n2, 1.63), v);
      ASSERT_LT(ks_critical_value(n1, n2 + 1, 1.63), v);
    }
  }
}

TEST(KsTest, AcceptanceIsStrict) {
  const std::vector<double> a{0}, b{1};
  const auto r = ks_test(a, b, 1.0 / std::sqrt(2.0));  // D_alpha = 1 exactly
  EXPECT_DOUBLE_EQ(r.statistic, 1.0);
  EXPECT_NEAR(r.critical_value, 1.0, 1e-15);
  EXPECT_EQ(r.accepted, r.statistic < r.critical_value);
}

TEST(Selection, ExhaustiveMatchesOracle) {
  const auto totals = score_totals(all_locations());
  const auto sel = select_sample_scores_exhaustive(totals, 6, 1.63);
  EXPECT_EQ(sel.candidates_evaluated, 8008u);

  // Oracle: every 6-subset of the 16 distinct values, brute-force KS.
  std::vector<int> distinct(totals.begin(), totals.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  ASSERT_EQ(distinct.size(), 16u);
  const auto all = as_doubles(totals);
  double best = 2;
  std::vector<int> best_subset;
  for (unsigned mask = 0; mask < (1u << 16); ++mask) {
    if (__builtin_popcount(mask) != 6) continue;
    std::vector<double> s;
    std::vector<int> si;
    for (int i = 0; i < 16; ++i) {
      if (mask & (1u << i)) {
        s.push_back(distinct[i]);
        si.push_back(distinct[i]);
      }
    }
    const double d = oracle::ks_brute(s, all);
    if (d < best - 1e-12 || (std::fabs(d - best) <= 1e-12 && si < best_subset)) {
      best = d;
      best_subset = si;
    }
  }
  EXPECT_NEAR(sel.ks.statistic, best, 1e-12);
  EXPECT_EQ(sel.subset, best_subset);
  EXPECT_NEAR(best, kBestSubsetD, 1e-12);
  EXPECT_EQ(sel.subset, (std::vector<int>{11, 15, 16, 18, 20, 23}));
  EXPECT_LE(sel.ks.statistic, kChosenSubsetD);
  EXPECT_TRUE(sel.ks.accepted);
  EXPECT_NEAR(sel.ks.critical_value, 0.7202, 1e-4);
}

TEST(Selection, RandomIsSeededAndFindsAtLeastTheChosenSubset) {
  const auto totals = score_totals(all_locations());
  const auto a = select_sample_scores(totals, 6, 1.63, 10000, 7);
  const auto b = select_sample_scores(totals, 6, 1.63, 10000, 7);
  EXPECT_EQ(a.subset, b.subset);
  EXPECT_DOUBLE_EQ(a.ks.statistic, b.ks.statistic);
  EXPECT_EQ(a.candidates_evaluated, 10000u);
  EXPECT_LT(a.ks.statistic, 0.7202);
  EXPECT_TRUE(a.ks.accepted);
  EXPECT_NEAR(a.ks.statistic, ks_statistic(as_doubles(a.subset), as_doubles(totals)), 1e-15);
  // 10000 draws over 8008 subsets almost surely include the field-study subset.
  EXPECT_LE(a.ks.statistic, kChosenSubsetD + 1e-12);
}

TEST(Selection, Degenerate) {
  const std::vector<int> same{7, 7, 7};
  const auto s = select_sample_scores(same, 1, 1.63, 5, 1);
  EXPECT_EQ(s.subset, std::vector<int>{7});
  EXPECT_DOUBLE_EQ(s.ks.statistic, 0.0);

  const std::vector<int> six{1, 2, 3, 4, 5, 6};
  EXPECT_CODE(select_sample_scores(six, 7, 1.63, 10, 1), kInsufficientDistinctScores);
  EXPECT_CODE(select_sample_scores_exhaustive(six, 7, 1.63), kInsufficientDistinctScores);
  EXPECT_CODE(select_sample_scores(six, 3, 1.63, 0, 1), kInvalidArgument);
}

TEST(Selection, LocationsForScoresPicksLowestLocation) {
  const auto scores = all_locations();
  const std::vector<int> subset{11, 15, 16, 17, 19, 23};
  EXPECT_EQ(locations_for_scores(scores, subset), (std::vector<int>{10, 11, 8, 14, 18, 27}));
  EXPECT_CODE(locations_for_scores(scores, std::vector<int>{9}), kInvalidArgument);
}

TEST(Selection, EvaluateSubset) {
  const auto totals = score_totals(all_locations());
  const std::vector<int> chosen{11, 15, 16, 17, 19, 23};
  const auto r = evaluate_subset(chosen, totals, 1.63);
  EXPECT_NEAR(r.statistic, kChosenSubsetD, 1e-12);
  EXPECT_TRUE(r.accepted);
}
