#include "sampling/location_scores.hpp"

#include <charconv>

#include "core/error.hpp"
#include "core/identity.hpp"
#include "core/json_io.hpp"
#include "ingest/csv.hpp"

namespace runlabel {
namespace {

void check_component(const char* name, int v) {
  if (v < 1 || v > 5) {
    throw Error(ErrorCode::kComponentOutOfRange,
                std::string(name) + " score must be in [1,5], got " + std::to_string(v));
  }
}

}  // namespace

LocationScore location_score(int location_number, const ScenarioScores& c) {
  if (location_number < 1 || location_number > kLocationCount) {
    throw Error(ErrorCode::kComponentOutOfRange,
                "location number must be in 1..42, got " + std::to_string(location_number));
  }
  check_component("lighting", c.lighting);
  check_component("resolution", c.resolution);
  check_component("recording_angle", c.recording_angle);
  check_component("occlusion", c.occlusion);
  check_component("crowded_videos", c.crowded_videos);
  return {location_number, c.lighting,  c.resolution, c.recording_angle,
          c.occlusion,     c.crowded_videos,
          c.lighting + c.resolution + c.recording_angle + c.occlusion + c.crowded_videos};
}

std::vector<LocationScore> parse_scores_csv(std::string_view text) {
  auto rows = csv::parse(text);
  if (rows.empty()) throw Error(ErrorCode::kMissingColumn, "scores CSV has no header row");
  const csv::Header header(std::move(rows.front()));
  const auto loc = header.require("location");
  const auto occ = header.require("occlusion");
  const auto lig = header.require("lighting");
  const auto ang = header.require("recording_angle");
  const auto res = header.require("resolution");
  const auto cro = header.require("crowded_videos");
  const auto tot = header.require("score");

  std::vector<LocationScore> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto num = [&](std::size_t col) {
      if (col >= row.size()) {
        throw Error(ErrorCode::kMalformedRow, "row " + std::to_string(r) + ": too few fields");
      }
      int v = 0;
      const auto& s = row[col];
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size()) {
        throw Error(ErrorCode::kMalformedRow,
                    "row " + std::to_string(r) + ": '" + s + "' is not an integer");
      }
      return v;
    };
    auto score = location_score(num(loc), ScenarioScores{num(lig), num(res), num(ang), num(occ), num(cro)});
    if (score.total != num(tot)) {
      throw Error(ErrorCode::kMalformedRow, "row " + std::to_string(r) + ": score " +
                                                std::to_string(num(tot)) + " != component sum " +
                                                std::to_string(score.total));
    }
    out.push_back(score);
  }
  return out;
}

std::vector<LocationScore> load_scores_csv(const std::filesystem::path& path) {
  return parse_scores_csv(read_text_file(path));
}

std::string write_scores_csv(const std::vector<LocationScore>& scores) {
  std::string out = "location,occlusion,lighting,recording_angle,resolution,crowded_videos,score\n";
  for (const auto& s : scores) {
    out += csv::format_row({std::to_string(s.location_number), std::to_string(s.occlusion),
                            std::to_string(s.lighting), std::to_string(s.recording_angle),
                            std::to_string(s.resolution), std::to_string(s.crowded_videos),
                            std::to_string(s.total)});
  }
  return out;
}

std::vector<int> score_totals(const std::vector<LocationScore>& scores) {
  std::vector<int> out;
  out.reserve(scores.size());
  for (const auto& s : scores) out.push_back(s.total);
  return out;
}

}  // namespace runlabel
