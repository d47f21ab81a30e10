#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/json_io.hpp"
#include "ingest/runners.hpp"

namespace runlabel {

/// A camera location and its distance along the course.
struct Checkpoint {
  int location_number = 0;
  double distance_km = 0;
};

/// Locations 1..42, location i at i km.
std::vector<Checkpoint> default_checkpoints();

/// CSV with columns location_number,distance_km.
std::vector<Checkpoint> parse_checkpoints_csv(std::string_view text);
std::vector<Checkpoint> load_checkpoints_csv(const std::filesystem::path& path);

struct TimelineEntry {
  int location_number = 0;
  double distance_km = 0;
  double estimated_passing_s = 0;
};

/// Estimated passing time of one runner at each checkpoint, ordered by distance.
struct Timeline {
  std::int64_t bib = 0;
  std::vector<TimelineEntry> entries;

  std::optional<double> passing_time(int location_number) const;
};

/// Average speed over a segment in km/s. Throws Error(kNonMonotoneSplit)
/// unless d_j > d_i >= 0 and t_j > t_i >= 0.
double segment_speed(double d_i_km, double t_i_s, double d_j_km, double t_j_s);

/// Passing times from the variable average speed of the enclosing segment:
/// a checkpoint x between consecutive available splits i and j passes at
/// t_i + (d_x - d_i) / V_ij, so missing intermediate splits are spanned by the
/// wider segment. Checkpoints on a split return the split time exactly; the
/// race start (0 km, 0 s) anchors checkpoints before the first split.
///
/// Errors: kInsufficientSplits (fewer than two splits), kCheckpointOutOfRange
/// (negative distance or beyond the last split).
Timeline compute_timeline(const RunnerRecord& record, const std::vector<Checkpoint>& checkpoints);

/// Timelines for many runners; checkpoints past a runner's finish distance
/// are left out. Records that cannot produce a timeline are skipped and their
/// bibs appended to `skipped` when given.
std::vector<Timeline> compute_timelines(const std::vector<RunnerRecord>& records,
                                        const std::vector<Checkpoint>& checkpoints,
                                        std::vector<std::int64_t>* skipped = nullptr);

Json timeline_to_json(const Timeline& timeline);

/// CSV bib,location_number,estimated_passing_s.
std::string write_timelines_csv(const std::vector<Timeline>& timelines);

}  // namespace runlabel
