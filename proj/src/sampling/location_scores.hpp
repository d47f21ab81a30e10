#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace runlabel {

/// Per-category scenario scores of a recording location, each 1 (worst) .. 5.
struct ScenarioScores {
  int lighting = 0;
  int resolution = 0;
  int recording_angle = 0;
  int occlusion = 0;
  int crowded_videos = 0;
};

struct LocationScore {
  int location_number = 0;
  int lighting = 0;
  int resolution = 0;
  int recording_angle = 0;
  int occlusion = 0;
  int crowded_videos = 0;
  int total = 0;

  friend bool operator==(const LocationScore&, const LocationScore&) = default;
};

/// Sums the five categories. Throws Error(kComponentOutOfRange) if any is
/// outside [1, 5] or the location is outside 1..42.
LocationScore location_score(int location_number, const ScenarioScores& components);

/// Scores CSV with columns location,occlusion,lighting,recording_angle,
/// resolution,crowded_videos,score. The score column must equal the sum.
std::vector<LocationScore> parse_scores_csv(std::string_view text);
std::vector<LocationScore> load_scores_csv(const std::filesystem::path& path);
std::string write_scores_csv(const std::vector<LocationScore>& scores);

std::vector<int> score_totals(const std::vector<LocationScore>& scores);

}  // namespace runlabel
