#include "alignment/timeline.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>

#include "core/error.hpp"
#include "core/identity.hpp"
#include "core/json_io.hpp"
#include "ingest/csv.hpp"

namespace runlabel {

std::vector<Checkpoint> default_checkpoints() {
  std::vector<Checkpoint> out;
  for (int i = 1; i <= kLocationCount; ++i) out.push_back({i, static_cast<double>(i)});
  return out;
}

std::vector<Checkpoint> parse_checkpoints_csv(std::string_view text) {
  auto rows = csv::parse(text);
  if (rows.empty()) throw Error(ErrorCode::kMissingColumn, "checkpoint CSV has no header row");
  const csv::Header header(std::move(rows.front()));
  const auto loc = header.require("location_number");
  const auto dist = header.require("distance_km");
  std::vector<Checkpoint> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto bad = [&] { throw Error(ErrorCode::kMalformedRow, "checkpoint row " + std::to_string(r) + " is malformed"); };
    if (row.size() <= std::max(loc, dist)) bad();
    Checkpoint c;
    const auto& ls = row[loc];
    const auto& ds = row[dist];
    auto [p1, e1] = std::from_chars(ls.data(), ls.data() + ls.size(), c.location_number);
    auto [p2, e2] = std::from_chars(ds.data(), ds.data() + ds.size(), c.distance_km);
    if (e1 != std::errc() || p1 != ls.data() + ls.size() || e2 != std::errc() ||
        p2 != ds.data() + ds.size() || c.location_number < 1 || c.location_number > kLocationCount ||
        c.distance_km < 0) {
      bad();
    }
    out.push_back(c);
  }
  return out;
}

std::vector<Checkpoint> load_checkpoints_csv(const std::filesystem::path& path) {
  return parse_checkpoints_csv(read_text_file(path));
}

std::optional<double> Timeline::passing_time(int location_number) const {
  for (const auto& e : entries) {
    if (e.location_number == location_number) return e.estimated_passing_s;
  }
  return std::nullopt;
}

double segment_speed(double d_i_km, double t_i_s, double d_j_km, double t_j_s) {
  if (!(d_j_km > d_i_km && d_i_km >= 0 && t_j_s > t_i_s && t_i_s >= 0)) {
    throw Error(ErrorCode::kNonMonotoneSplit, "segment needs increasing distance and time");
  }
  return (d_j_km - d_i_km) / (t_j_s - t_i_s);
}

Timeline compute_timeline(const RunnerRecord& record, const std::vector<Checkpoint>& checkpoints) {
  if (record.splits.size() < 2) {
    throw Error(ErrorCode::kInsufficientSplits,
                "bib " + std::to_string(record.bib) + " has fewer than two split times");
  }
  std::vector<std::pair<double, double>> known = {{0.0, 0.0}};
  for (const auto& [km, t] : record.splits) {
    if (km == 0.0) continue;
    known.emplace_back(km, static_cast<double>(t));
  }
  const double last_km = known.back().first;

  Timeline tl{record.bib, {}};
  tl.entries.reserve(checkpoints.size());
  for (const auto& cp : checkpoints) {
    if (cp.distance_km < 0 || cp.distance_km > last_km) {
      throw Error(ErrorCode::kCheckpointOutOfRange,
                  "location " + std::to_string(cp.location_number) + " at " +
                      number_to_json(cp.distance_km).dump() + " km is outside bib " +
                      std::to_string(record.bib) + "'s recorded splits");
    }
    // First known point at or beyond the checkpoint.
    auto hi = std::lower_bound(known.begin(), known.end(), cp.distance_km,
                               [](const auto& k, double d) { return k.first < d; });
    double t;
    if (hi->first == cp.distance_km) {
      t = hi->second;
    } else {
      const auto lo = std::prev(hi);
      const double v = segment_speed(lo->first, lo->second, hi->first, hi->second);
      t = lo->second + (cp.distance_km - lo->first) / v;
    }
    tl.entries.push_back({cp.location_number, cp.distance_km, t});
  }
  std::stable_sort(tl.entries.begin(), tl.entries.end(),
                   [](const TimelineEntry& a, const TimelineEntry& b) { return a.distance_km < b.distance_km; });
  return tl;
}

std::vector<Timeline> compute_timelines(const std::vector<RunnerRecord>& records,
                                        const std::vector<Checkpoint>& checkpoints,
                                        std::vector<std::int64_t>* skipped) {
  std::vector<Timeline> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    const double finish = finish_distance_km(rec.race);
    std::vector<Checkpoint> reachable;
    for (const auto& cp : checkpoints) {
      if (cp.distance_km <= finish) reachable.push_back(cp);
    }
    try {
      out.push_back(compute_timeline(rec, reachable));
    } catch (const Error&) {
      if (skipped) skipped->push_back(rec.bib);
    }
  }
  return out;
}

Json timeline_to_json(const Timeline& timeline) {
  Json entries = Json::array();
  for (const auto& e : timeline.entries) {
    entries.push_back({{"location_number", e.location_number},
                       {"distance_km", number_to_json(e.distance_km)},
                       {"estimated_passing_s", number_to_json(e.estimated_passing_s)}});
  }
  return {{"bib", timeline.bib}, {"entries", std::move(entries)}};
}

std::string write_timelines_csv(const std::vector<Timeline>& timelines) {
  std::string out = "bib,location_number,estimated_passing_s\n";
  for (const auto& tl : timelines) {
    for (const auto& e : tl.entries) {
      out += std::to_string(tl.bib) + "," + std::to_string(e.location_number) + "," +
             number_to_json(e.estimated_passing_s).dump() + "\n";
    }
  }
  return out;
}

}  // namespace runlabel
