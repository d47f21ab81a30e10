#pragma once

// Structured-text (JSON) schemas shared by the CLI, the service and the C API.
//
// Annotation file (one per video):
//   {"video_id": ..., "fps_source": 30,
//    "tracks": [{"identity": "42", "keyframes": [{"frame_index": 0, "box": [x0,y0,x1,y1]}]}],
//    "frame_ranges": [{"identity": "L3R1", "start_frame": 10, "end_frame": 95}]}
// Detections file: [{"frame_index": 3, "box": [...], "confidence": 0.9, "label"?: "42"}]
// Path-supervision file: {"42": [[frame_index, x, y], ...], ...}

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "core/annotation.hpp"

namespace runlabel {

using Json = nlohmann::json;

/// Integral values are written as JSON integers, everything else as the
/// shortest round-trip decimal.
Json number_to_json(double v);

Json box_to_json(const BoundingBox& box);
BoundingBox box_from_json(const Json& j);

Json identity_to_json(const Identity& id);
Identity identity_from_json(const Json& j);

Json keyframes_to_json(const std::vector<KeyframeAnnotation>& keyframes);
std::vector<KeyframeAnnotation> keyframes_from_json(const Json& j, const std::string& video_id);

/// {"identity", "keyframes"}; the video is implied by the enclosing document.
Json track_to_json(const Track& track);
Track track_from_json(const Json& j, const std::string& video_id);

Json frame_range_to_json(const FrameRangeAnnotation& range);
FrameRangeAnnotation frame_range_from_json(const Json& j, const std::string& video_id);

Json document_to_json(const AnnotationDocument& doc);
AnnotationDocument document_from_json(const Json& j);

Json detection_to_json(const Detection& d);
Json detections_to_json(const std::vector<Detection>& detections);
std::vector<Detection> detections_from_json(const Json& j, const std::string& video_id = {});

Json paths_to_json(const PathSet& paths);
PathSet paths_from_json(const Json& j);

/// Canonical text form used for files and HTTP bodies.
std::string to_text(const Json& j);

/// Throws Error(kMalformedDocument) with `what` in the message.
Json parse_json(std::string_view text, std::string_view what);

/// Throws Error(kIo).
std::string read_text_file(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, then renames over `path`.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace runlabel
