#include "ingest/video_meta.hpp"

#include <charconv>
#include <cmath>
#include <regex>

#include "core/clock.hpp"
#include "core/error.hpp"

namespace runlabel {
namespace {

[[noreturn]] void bad(const std::string& entry, const std::string& why) {
  throw Error(ErrorCode::kMalformedManifest, "manifest entry " + entry + ": " + why);
}

// exiftool renders sizes and durations either as bare numbers or with a unit
// suffix ("21.92 MB", "14.34 s"); long durations come as "0:01:34".
double number_field(const Json& j, const char* key, const std::string& entry) {
  auto it = j.find(key);
  if (it == j.end()) bad(entry, std::string("missing ") + key);
  if (it->is_number()) return it->get<double>();
  if (!it->is_string()) bad(entry, std::string(key) + " must be a number");
  const auto s = it->get<std::string>();
  if (s.find(':') != std::string::npos) {
    try {
      return static_cast<double>(parse_clock_time(s));
    } catch (const Error&) {
      bad(entry, std::string(key) + " is not a number or clock time: '" + s + "'");
    }
  }
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr == s.data()) bad(entry, std::string(key) + " is not numeric: '" + s + "'");
  return v;
}

std::string string_field(const Json& j, const char* key, const std::string& entry) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) bad(entry, std::string("missing string ") + key);
  return it->get<std::string>();
}

std::string format_number(double v) {
  auto j = number_to_json(v);
  return j.dump();
}

}  // namespace

std::string VideoMeta::video_id() const {
  return std::filesystem::path(file_name).stem().string();
}

std::int64_t VideoMeta::frame_count() const {
  return static_cast<std::int64_t>(std::llround(duration_s * frame_rate));
}

VideoMeta video_meta_from_json(const Json& j) {
  if (!j.is_object()) bad("?", "expected an object");
  VideoMeta m;
  m.file_name = string_field(j, "FileName", "?");
  const auto& entry = m.file_name;
  m.file_size_mb = number_field(j, "FileSize", entry);
  if (auto it = j.find("FileType"); it != j.end() && it->is_string()) m.file_type = it->get<std::string>();
  m.duration_s = number_field(j, "Duration", entry);
  m.frame_rate = number_field(j, "VideoFrameRate", entry);

  static const std::regex size_re(R"(\s*(\d+)\s*[xX]\s*(\d+)\s*)");
  const auto size = string_field(j, "ImageSize", entry);
  std::smatch sm;
  if (!std::regex_match(size, sm, size_re)) bad(entry, "ImageSize must look like 1280x720");
  m.width = std::stoi(sm[1]);
  m.height = std::stoi(sm[2]);

  static const std::regex date_re(R"(\d{4}:\d{2}:\d{2} \d{2}:\d{2}:\d{2})");
  m.track_create_date = string_field(j, "TrackCreateDate", entry);
  if (!std::regex_match(m.track_create_date, date_re)) {
    bad(entry, "TrackCreateDate must look like 2019:10:13 09:43:55");
  }

  if (auto it = j.find("GPSCoordinates"); it != j.end() && !it->is_null()) {
    static const std::regex gps_re(R"(\s*(-?\d+(?:\.\d+)?)\s+(-?\d+(?:\.\d+)?)\s*)");
    if (!it->is_string()) bad(entry, "GPSCoordinates must be a \"lat lon\" string");
    const auto gps = it->get<std::string>();
    if (!std::regex_match(gps, sm, gps_re)) bad(entry, "GPSCoordinates must be \"lat lon\"");
    m.gps = GpsCoordinate{std::stod(sm[1]), std::stod(sm[2])};
  }

  auto loc = j.find("LocationNumber");
  if (loc == j.end() || !loc->is_number_integer()) bad(entry, "missing integer LocationNumber");
  m.location_number = loc->get<int>();

  if (!(m.duration_s > 0)) bad(entry, "Duration must be positive");
  if (!(m.frame_rate > 0)) bad(entry, "VideoFrameRate must be positive");
  if (m.width <= 0 || m.height <= 0) bad(entry, "ImageSize must be positive");
  if (m.location_number < 1 || m.location_number > kLocationCount) {
    bad(entry, "LocationNumber must be in 1..42");
  }
  return m;
}

Json video_meta_to_json(const VideoMeta& m) {
  Json j = {{"FileName", m.file_name},
            {"FileSize", number_to_json(m.file_size_mb)},
            {"FileType", m.file_type},
            {"Duration", number_to_json(m.duration_s)},
            {"VideoFrameRate", number_to_json(m.frame_rate)},
            {"ImageSize", std::to_string(m.width) + "x" + std::to_string(m.height)},
            {"TrackCreateDate", m.track_create_date},
            {"LocationNumber", m.location_number}};
  if (m.gps) j["GPSCoordinates"] = format_number(m.gps->lat) + " " + format_number(m.gps->lon);
  return j;
}

std::vector<VideoMeta> parse_video_manifest(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kMalformedManifest, "video manifest must be a list");
  std::vector<VideoMeta> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(video_meta_from_json(e));
  return out;
}

std::vector<VideoMeta> load_video_manifest(const std::filesystem::path& path) {
  return parse_video_manifest(read_json_file(path));
}

DatasetStats dataset_stats(const std::vector<VideoMeta>& manifests) {
  if (manifests.empty()) throw Error(ErrorCode::kEmptyManifest, "no videos in manifest");
  DatasetStats s;
  s.count = manifests.size();
  double total = 0;
  for (const auto& m : manifests) {
    total += m.duration_s;
    s.total_frames += m.frame_count();
  }
  const double n = static_cast<double>(s.count);
  s.mean_duration_s = total / n;
  double ss = 0;
  for (const auto& m : manifests) ss += (m.duration_s - s.mean_duration_s) * (m.duration_s - s.mean_duration_s);
  s.std_duration_s = std::sqrt(ss / n);
  s.total_duration_h = total / 3600.0;
  return s;
}

Json dataset_stats_to_json(const DatasetStats& s) {
  return {{"count", s.count},
          {"total_duration_h", s.total_duration_h},
          {"mean_duration_s", s.mean_duration_s},
          {"std_duration_s", s.std_duration_s},
          {"total_frames", s.total_frames}};
}

std::vector<std::string> validate_against_video(const AnnotationDocument& doc, const VideoMeta& meta) {
  std::vector<std::string> issues;
  const auto frames = meta.frame_count();
  auto check_box = [&](const std::string& who, std::int64_t f, const BoundingBox& b) {
    if (f >= frames) {
      issues.push_back(who + ": frame " + std::to_string(f) + " beyond last frame " +
                       std::to_string(frames - 1));
    }
    if (b.x_max() > meta.width || b.y_max() > meta.height) {
      issues.push_back(who + ": box at frame " + std::to_string(f) + " leaves the " +
                       std::to_string(meta.width) + "x" + std::to_string(meta.height) + " frame");
    }
  };
  for (const auto& t : doc.tracks) {
    // Interpolated boxes are convex combinations of keyframes, so checking the
    // keyframes covers the whole track.
    for (const auto& kf : t.keyframes()) check_box("track " + t.identity().str(), kf.frame.frame_index, kf.box);
  }
  for (const auto& r : doc.frame_ranges) {
    if (r.end_frame >= frames) {
      issues.push_back("range " + r.identity.str() + ": end frame " + std::to_string(r.end_frame) +
                       " beyond last frame " + std::to_string(frames - 1));
    }
  }
  return issues;
}

}  // namespace runlabel
