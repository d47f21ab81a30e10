#include "core/json_io.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace runlabel {
namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedDocument, what);
}

const Json& require(const Json& j, const char* key, const char* context) {
  if (!j.is_object()) malformed(std::string(context) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string(context) + ": missing field '" + key + "'");
  return *it;
}

double as_number(const Json& j, const char* context) {
  if (!j.is_number()) malformed(std::string(context) + ": expected a number");
  return j.get<double>();
}

std::int64_t as_integer(const Json& j, const char* context) {
  if (!j.is_number_integer()) malformed(std::string(context) + ": expected an integer");
  return j.get<std::int64_t>();
}

}  // namespace

Json number_to_json(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

Json box_to_json(const BoundingBox& box) {
  return Json::array({number_to_json(box.x_min()), number_to_json(box.y_min()),
                      number_to_json(box.x_max()), number_to_json(box.y_max())});
}

BoundingBox box_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) malformed("box: expected [x_min, y_min, x_max, y_max]");
  return BoundingBox::make(as_number(j[0], "box"), as_number(j[1], "box"),
                           as_number(j[2], "box"), as_number(j[3], "box"));
}

Json identity_to_json(const Identity& id) { return id.str(); }

Identity identity_from_json(const Json& j) {
  if (j.is_string()) return Identity::parse(j.get<std::string>());
  if (j.is_number_integer()) return Identity::bib(j.get<std::int64_t>());
  malformed("identity: expected a string or bib number");
}

Json keyframes_to_json(const std::vector<KeyframeAnnotation>& keyframes) {
  Json out = Json::array();
  for (const auto& kf : keyframes) {
    out.push_back({{"frame_index", kf.frame.frame_index}, {"box", box_to_json(kf.box)}});
  }
  return out;
}

std::vector<KeyframeAnnotation> keyframes_from_json(const Json& j, const std::string& video_id) {
  if (!j.is_array()) malformed("keyframes: expected a list");
  std::vector<KeyframeAnnotation> out;
  out.reserve(j.size());
  for (const auto& k : j) {
    out.push_back({FrameRef{video_id, as_integer(require(k, "frame_index", "keyframe"), "frame_index")},
                   box_from_json(require(k, "box", "keyframe"))});
  }
  return out;
}

Json track_to_json(const Track& track) {
  return {{"identity", identity_to_json(track.identity())},
          {"keyframes", keyframes_to_json(track.keyframes())}};
}

Track track_from_json(const Json& j, const std::string& video_id) {
  return Track(identity_from_json(require(j, "identity", "track")), video_id,
               keyframes_from_json(require(j, "keyframes", "track"), video_id));
}

Json frame_range_to_json(const FrameRangeAnnotation& range) {
  return {{"identity", identity_to_json(range.identity)},
          {"start_frame", range.start_frame},
          {"end_frame", range.end_frame}};
}

FrameRangeAnnotation frame_range_from_json(const Json& j, const std::string& video_id) {
  FrameRangeAnnotation r{identity_from_json(require(j, "identity", "frame range")), video_id,
                         as_integer(require(j, "start_frame", "frame range"), "start_frame"),
                         as_integer(require(j, "end_frame", "frame range"), "end_frame")};
  r.validate();
  return r;
}

Json document_to_json(const AnnotationDocument& doc) {
  Json tracks = Json::array();
  for (const auto& t : doc.tracks) tracks.push_back(track_to_json(t));
  Json ranges = Json::array();
  for (const auto& r : doc.frame_ranges) ranges.push_back(frame_range_to_json(r));
  return {{"video_id", doc.video_id},
          {"fps_source", doc.fps_source},
          {"tracks", std::move(tracks)},
          {"frame_ranges", std::move(ranges)}};
}

AnnotationDocument document_from_json(const Json& j) {
  AnnotationDocument doc;
  const auto& vid = require(j, "video_id", "annotation document");
  if (!vid.is_string()) malformed("annotation document: video_id must be a string");
  doc.video_id = vid.get<std::string>();
  if (auto it = j.find("fps_source"); it != j.end()) {
    doc.fps_source = static_cast<int>(as_integer(*it, "fps_source"));
  }
  if (auto it = j.find("tracks"); it != j.end()) {
    if (!it->is_array()) malformed("annotation document: tracks must be a list");
    for (const auto& t : *it) doc.tracks.push_back(track_from_json(t, doc.video_id));
  }
  if (auto it = j.find("frame_ranges"); it != j.end()) {
    if (!it->is_array()) malformed("annotation document: frame_ranges must be a list");
    for (const auto& r : *it) doc.frame_ranges.push_back(frame_range_from_json(r, doc.video_id));
  }
  return doc;
}

Json detection_to_json(const Detection& d) {
  Json out = {{"frame_index", d.frame.frame_index},
              {"box", box_to_json(d.box)},
              {"confidence", number_to_json(d.confidence)}};
  if (d.label) out["label"] = identity_to_json(*d.label);
  return out;
}

Json detections_to_json(const std::vector<Detection>& detections) {
  Json out = Json::array();
  for (const auto& d : detections) out.push_back(detection_to_json(d));
  return out;
}

std::vector<Detection> detections_from_json(const Json& j, const std::string& video_id) {
  if (!j.is_array()) malformed("detections: expected a list");
  std::vector<Detection> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    Detection d{FrameRef{video_id, as_integer(require(e, "frame_index", "detection"), "frame_index")},
                box_from_json(require(e, "box", "detection")), 1.0, std::nullopt};
    if (auto it = e.find("confidence"); it != e.end()) d.confidence = as_number(*it, "confidence");
    if (auto it = e.find("label"); it != e.end() && !it->is_null()) d.label = identity_from_json(*it);
    if (d.frame.frame_index < 0) malformed("detection: negative frame_index");
    d.validate();
    out.push_back(std::move(d));
  }
  return out;
}

Json paths_to_json(const PathSet& paths) {
  Json out = Json::object();
  for (const auto& [id, points] : paths) {
    Json list = Json::array();
    for (const auto& p : points) {
      list.push_back(Json::array({p.frame_index, number_to_json(p.x), number_to_json(p.y)}));
    }
    out[id.str()] = std::move(list);
  }
  return out;
}

PathSet paths_from_json(const Json& j) {
  if (!j.is_object()) malformed("paths: expected an object keyed by identity");
  PathSet out;
  for (const auto& [key, list] : j.items()) {
    auto id = Identity::parse(key);
    if (!list.is_array()) malformed("paths: entry for " + key + " must be a list");
    auto& points = out[id];
    for (const auto& t : list) {
      if (!t.is_array() || t.size() != 3) malformed("paths: expected [frame_index, x, y] triples");
      PathPoint p{as_integer(t[0], "path frame_index"), as_number(t[1], "path x"),
                  as_number(t[2], "path y")};
      if (p.frame_index < 0 || p.x < 0 || p.y < 0) {
        throw Error(ErrorCode::kNegativeCoordinate, "path point for " + key + " has a negative value");
      }
      points.push_back(p);
    }
  }
  return out;
}

std::string to_text(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    malformed(std::string(what) + ": " + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  return parse_json(read_text_file(path), path.string());
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view text) {
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);

  auto fail = [&](const char* step) {
    const std::string msg = std::string(step) + " " + tmp.string() + ": " + std::strerror(errno);
    ::unlink(tmp.c_str());
    throw Error(ErrorCode::kIo, msg);
  };

  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw Error(ErrorCode::kIo, "cannot create " + tmp.string() + ": " + std::strerror(errno));
  std::size_t done = 0;
  while (done < text.size()) {
    const auto n = ::write(fd, text.data() + done, text.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      fail("write");
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    ::close(fd);
    fail("fsync");
  }
  if (::close(fd) != 0) fail("close");
  if (::rename(tmp.c_str(), path.c_str()) != 0) fail("rename");
}

}  // namespace runlabel
