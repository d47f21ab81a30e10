#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "alignment/reid.hpp"
#include "alignment/timeline.hpp"
#include "alignment/unique_id.hpp"
#include "core/annotation.hpp"
#include "ingest/frames.hpp"
#include "ingest/runners.hpp"
#include "ingest/video_meta.hpp"

namespace runlabel {

/// Data-root layout:
///   videos.json                 video manifest
///   frames/<video_id>/          extracted frames + frames.txt
///   annotations/<video_id>.json annotation document (written by the store)
///   runners/*.csv               results CSVs (full and half marathon)
///   checkpoints.csv             location_number,distance_km (default: i km)
///   gallery.json                re-id gallery features
///   counters.json               LiRj counters (written by the store)
///
/// Every write goes to a temp file that is renamed into place. Writes to one
/// video's document are serialized; reads of it run concurrently.
class AnnotationStore {
 public:
  /// Throws Error(kMissingDataRoot) if `root` is not a directory.
  explicit AnnotationStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  const std::vector<VideoMeta>& videos() const noexcept { return videos_; }
  const VideoMeta* find_video(const std::string& video_id) const;
  /// nullptr when no frame directory was ingested for the video.
  const FrameSequence* frames(const std::string& video_id) const;

  /// Canonical track document and its revision token.
  struct StoredTrack {
    std::string body;
    std::string revision;
  };

  /// Errors: kNotFound (unknown video).
  std::optional<StoredTrack> get_track(const std::string& video_id, const Identity& identity) const;

  /// Writes a track. `if_match` must equal the stored revision when the track
  /// exists, unless the stored content already equals `track` (then the call
  /// is a no-op). Errors: kNotFound (unknown video), kConflict.
  StoredTrack put_track(const Track& track, const std::optional<std::string>& if_match);

  /// Errors: kNotFound (unknown video or track), kConflict (stale token).
  void delete_track(const std::string& video_id, const Identity& identity,
                    const std::optional<std::string>& if_match);

  /// Errors: kNotFound (unknown video).
  AnnotationDocument document(const std::string& video_id) const;

  const std::vector<RunnerRecord>& runners() const noexcept { return runners_; }
  const std::vector<Timeline>& timelines() const noexcept { return timelines_; }
  const RunnerRecord* find_runner(std::int64_t bib) const;
  const Timeline* find_timeline(std::int64_t bib) const;

  const std::vector<GalleryImage>& gallery() const noexcept { return gallery_; }

  /// Next LiRj identity for a location; the counter state is persisted before
  /// returning. Serialized across all callers.
  Identity next_unique_id(int location_number);

  static std::string revision_of(const std::string& body);

 private:
  std::filesystem::path document_path(const std::string& video_id) const;
  AnnotationDocument read_document(const std::string& video_id) const;
  void write_document(const AnnotationDocument& doc);
  std::shared_mutex& lock_for(const std::string& video_id) const;

  std::filesystem::path root_;
  std::vector<VideoMeta> videos_;
  std::map<std::string, FrameSequence> frames_;
  std::vector<RunnerRecord> runners_;
  std::vector<Timeline> timelines_;
  std::vector<GalleryImage> gallery_;

  mutable std::mutex locks_mutex_;
  mutable std::map<std::string, std::unique_ptr<std::shared_mutex>> locks_;

  std::mutex counter_mutex_;
  UniqueIdCounter counter_;
};

}  // namespace runlabel
