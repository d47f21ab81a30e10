#include "service/store.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "core/error.hpp"
#include "core/json_io.hpp"

namespace fs = std::filesystem;

namespace runlabel {
namespace {

constexpr const char* kCountersFile = "counters.json";

bool safe_id(const std::string& id) {
  if (id.empty() || id == "." || id == "..") return false;
  return id.find_first_of("/\\") == std::string::npos && id.find('\0') == std::string::npos;
}

std::string track_body(const Track& track) { return to_text(track_to_json(track)); }

}  // namespace

AnnotationStore::AnnotationStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  if (!fs::is_directory(root_, ec)) {
    throw Error(ErrorCode::kMissingDataRoot, "data root " + root_.string() + " is not a directory");
  }

  if (fs::exists(root_ / "videos.json")) videos_ = load_video_manifest(root_ / "videos.json");

  if (fs::is_directory(root_ / "frames")) {
    for (const auto& entry : fs::directory_iterator(root_ / "frames")) {
      if (!entry.is_directory() || !fs::exists(entry.path() / kFrameListName)) continue;
      auto id = entry.path().filename().string();
      frames_.emplace(id, load_frame_sequence(entry.path(), id));
    }
  }

  if (fs::is_directory(root_ / "runners")) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root_ / "runners")) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::set<std::int64_t> bibs;
    for (const auto& f : files) {
      for (auto& rec : load_runner_csv(f)) {
        if (!bibs.insert(rec.bib).second) {
          throw Error(ErrorCode::kDuplicateBib,
                      "bib " + std::to_string(rec.bib) + " appears in more than one runner file");
        }
        runners_.push_back(std::move(rec));
      }
    }
    std::sort(runners_.begin(), runners_.end(),
              [](const RunnerRecord& a, const RunnerRecord& b) { return a.bib < b.bib; });
  }

  const auto checkpoints = fs::exists(root_ / "checkpoints.csv") ? load_checkpoints_csv(root_ / "checkpoints.csv")
                                                                 : default_checkpoints();
  timelines_ = compute_timelines(runners_, checkpoints);

  if (fs::exists(root_ / "gallery.json")) gallery_ = load_gallery(root_ / "gallery.json");
  if (fs::exists(root_ / kCountersFile)) counter_ = UniqueIdCounter::from_json(read_json_file(root_ / kCountersFile));
}

const VideoMeta* AnnotationStore::find_video(const std::string& video_id) const {
  for (const auto& v : videos_) {
    if (v.video_id() == video_id) return &v;
  }
  return nullptr;
}

const FrameSequence* AnnotationStore::frames(const std::string& video_id) const {
  auto it = frames_.find(video_id);
  return it == frames_.end() ? nullptr : &it->second;
}

fs::path AnnotationStore::document_path(const std::string& video_id) const {
  return root_ / "annotations" / (video_id + ".json");
}

std::shared_mutex& AnnotationStore::lock_for(const std::string& video_id) const {
  std::lock_guard guard(locks_mutex_);
  auto& slot = locks_[video_id];
  if (!slot) slot = std::make_unique<std::shared_mutex>();
  return *slot;
}

AnnotationDocument AnnotationStore::read_document(const std::string& video_id) const {
  if (!safe_id(video_id)) throw Error(ErrorCode::kNotFound, "unknown video '" + video_id + "'");
  const auto path = document_path(video_id);
  if (fs::exists(path)) return document_from_json(read_json_file(path));
  if (!find_video(video_id) && !frames(video_id)) {
    throw Error(ErrorCode::kNotFound, "unknown video '" + video_id + "'");
  }
  AnnotationDocument doc;
  doc.video_id = video_id;
  return doc;
}

void AnnotationStore::write_document(const AnnotationDocument& doc) {
  fs::create_directories(root_ / "annotations");
  write_text_file_atomic(document_path(doc.video_id), to_text(document_to_json(doc)));
}

AnnotationDocument AnnotationStore::document(const std::string& video_id) const {
  std::shared_lock lock(lock_for(video_id));
  return read_document(video_id);
}

std::optional<AnnotationStore::StoredTrack> AnnotationStore::get_track(const std::string& video_id,
                                                                       const Identity& identity) const {
  std::shared_lock lock(lock_for(video_id));
  const auto doc = read_document(video_id);
  for (const auto& t : doc.tracks) {
    if (t.identity() == identity) {
      auto body = track_body(t);
      auto rev = revision_of(body);
      return StoredTrack{std::move(body), std::move(rev)};
    }
  }
  return std::nullopt;
}

AnnotationStore::StoredTrack AnnotationStore::put_track(const Track& track,
                                                        const std::optional<std::string>& if_match) {
  std::unique_lock lock(lock_for(track.video_id()));
  auto doc = read_document(track.video_id());

  if (const auto* meta = find_video(track.video_id())) {
    AnnotationDocument probe{track.video_id(), kSourceFps, {track}, {}};
    const auto problems = validate_against_video(probe, *meta);
    if (!problems.empty()) throw Error(ErrorCode::kInvalidTrack, problems.front());
  }

  auto body = track_body(track);
  auto rev = revision_of(body);

  auto it = std::find_if(doc.tracks.begin(), doc.tracks.end(),
                         [&](const Track& t) { return t.identity() == track.identity(); });
  if (it != doc.tracks.end()) {
    if (*it == track) return {std::move(body), std::move(rev)};
    const auto current = revision_of(track_body(*it));
    if (!if_match || *if_match != current) {
      throw Error(ErrorCode::kConflict, "track " + track.identity().str() + " changed since revision " +
                                            (if_match ? *if_match : std::string("(none)")) +
                                            "; current revision is " + current);
    }
    *it = track;
  } else {
    if (if_match) {
      throw Error(ErrorCode::kConflict,
                  "track " + track.identity().str() + " no longer exists; revision " + *if_match + " is stale");
    }
    doc.tracks.push_back(track);
    std::sort(doc.tracks.begin(), doc.tracks.end(),
              [](const Track& a, const Track& b) { return a.identity() < b.identity(); });
  }
  write_document(doc);
  return {std::move(body), std::move(rev)};
}

void AnnotationStore::delete_track(const std::string& video_id, const Identity& identity,
                                   const std::optional<std::string>& if_match) {
  std::unique_lock lock(lock_for(video_id));
  auto doc = read_document(video_id);
  auto it = std::find_if(doc.tracks.begin(), doc.tracks.end(),
                         [&](const Track& t) { return t.identity() == identity; });
  if (it == doc.tracks.end()) {
    throw Error(ErrorCode::kNotFound, "video " + video_id + " has no track " + identity.str());
  }
  if (if_match && *if_match != revision_of(track_body(*it))) {
    throw Error(ErrorCode::kConflict, "track " + identity.str() + " changed since revision " + *if_match);
  }
  doc.tracks.erase(it);
  write_document(doc);
}

const RunnerRecord* AnnotationStore::find_runner(std::int64_t bib) const {
  auto it = std::lower_bound(runners_.begin(), runners_.end(), bib,
                             [](const RunnerRecord& r, std::int64_t b) { return r.bib < b; });
  return it != runners_.end() && it->bib == bib ? &*it : nullptr;
}

const Timeline* AnnotationStore::find_timeline(std::int64_t bib) const {
  for (const auto& t : timelines_) {
    if (t.bib == bib) return &t;
  }
  return nullptr;
}

Identity AnnotationStore::next_unique_id(int location_number) {
  std::lock_guard guard(counter_mutex_);
  UniqueIdCounter next = counter_;
  auto id = next.next(location_number);
  write_text_file_atomic(root_ / kCountersFile, to_text(next.to_json()));
  counter_ = next;
  return id;
}

std::string AnnotationStore::revision_of(const std::string& body) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : body) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace runlabel
