#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/annotation.hpp"
#include "core/json_io.hpp"

namespace runlabel {

struct GpsCoordinate {
  double lat = 0;
  double lon = 0;
  friend bool operator==(const GpsCoordinate&, const GpsCoordinate&) = default;
};

/// One recorded video, as read from the exif-derived manifest.
struct VideoMeta {
  std::string file_name;
  double file_size_mb = 0;
  std::string file_type;
  double duration_s = 0;
  double frame_rate = kSourceFps;
  int width = 0;
  int height = 0;
  std::string track_create_date;  // "YYYY:MM:DD hh:mm:ss"
  std::optional<GpsCoordinate> gps;
  int location_number = 0;

  /// File name without its extension; the key every other file refers to.
  std::string video_id() const;
  std::int64_t frame_count() const;

  friend bool operator==(const VideoMeta&, const VideoMeta&) = default;
};

/// Manifest schema: a list of objects with FileName, FileSize, FileType,
/// Duration, VideoFrameRate, ImageSize ("WxH"), TrackCreateDate,
/// GPSCoordinates ("lat lon", optional) and LocationNumber.
VideoMeta video_meta_from_json(const Json& j);
Json video_meta_to_json(const VideoMeta& meta);

/// Throws Error(kMalformedManifest) naming the offending entry.
std::vector<VideoMeta> parse_video_manifest(const Json& j);
std::vector<VideoMeta> load_video_manifest(const std::filesystem::path& path);

struct DatasetStats {
  std::size_t count = 0;
  double total_duration_h = 0;
  double mean_duration_s = 0;
  double std_duration_s = 0;  // population
  std::int64_t total_frames = 0;
};

/// Throws Error(kEmptyManifest) for an empty list.
DatasetStats dataset_stats(const std::vector<VideoMeta>& manifests);
Json dataset_stats_to_json(const DatasetStats& stats);

/// Problems found when checking an annotation document against its video:
/// boxes leaving the frame and frame indices past the end of the video.
std::vector<std::string> validate_against_video(const AnnotationDocument& doc, const VideoMeta& meta);

}  // namespace runlabel
