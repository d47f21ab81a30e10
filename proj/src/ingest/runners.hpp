#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/json_io.hpp"

namespace runlabel {

enum class Race { kFullMarathon, kHalfMarathon };

inline constexpr double kFullMarathonKm = 42.0;
inline constexpr double kHalfMarathonKm = 21.1;

double finish_distance_km(Race race) noexcept;
const char* race_name(Race race) noexcept;

/// A runner as scraped from the results site. `splits` maps distance (km) to
/// cumulative seconds and includes the finish at finish_distance_km(race).
struct RunnerRecord {
  std::int64_t bib = 0;
  std::string name;
  std::string gender;
  std::string country_code;
  Race race = Race::kFullMarathon;
  std::map<double, std::int64_t> splits;
  std::int64_t finish_time_s = 0;

  friend bool operator==(const RunnerRecord&, const RunnerRecord&) = default;
};

/// Split columns in results-site naming, with their distances.
struct SplitColumn {
  const char* name;
  double distance_km;
};
std::vector<SplitColumn> split_columns(Race race);

/// Parses a results CSV (header row with bib, name, gender, countryCode,
/// cumulativeTime_5k ... cumulativeTime_finish; times as H:MM:SS). Empty split
/// cells are missing splits. Without `race` the file is treated as a full
/// marathon when any split column beyond the half distance exists.
///
/// Errors: kMissingColumn, kMalformedRow (message carries the 1-based data
/// row number), kDuplicateBib.
std::vector<RunnerRecord> parse_runner_csv(std::string_view text, std::optional<Race> race = std::nullopt);
std::vector<RunnerRecord> load_runner_csv(const std::filesystem::path& path,
                                          std::optional<Race> race = std::nullopt);

/// {"bib", "name", "gender", "countryCode", "race", "splits": {"5": s, ...}, "finish_time_s"}
Json runner_to_json(const RunnerRecord& record);

/// Inverse of parse_runner_csv for records of one race.
std::string write_runner_csv(const std::vector<RunnerRecord>& records, Race race);

}  // namespace runlabel
