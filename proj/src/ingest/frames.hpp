#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "core/annotation.hpp"

namespace runlabel {

inline constexpr const char* kFrameListName = "frames.txt";

/// Frames extracted from one video by an external tool. The directory holds
/// the images plus frames.txt, one file name per line in frame order.
struct FrameSequence {
  std::string video_id;
  std::filesystem::path directory;
  std::vector<std::string> file_names;
  int source_fps = kSourceFps;

  std::int64_t frame_count() const noexcept { return static_cast<std::int64_t>(file_names.size()); }
  /// Throws Error(kNotFound) for an index outside the sequence.
  std::filesystem::path frame_path(std::int64_t frame_index) const;
};

/// Reads `<directory>/frames.txt`. Each name must carry a zero-padded frame
/// number (the trailing digits of its stem); numbers must strictly increase.
/// Throws Error(kIo) or Error(kMalformedManifest).
FrameSequence load_frame_sequence(const std::filesystem::path& directory, std::string video_id);

/// Indices 0, s, 2s, ... below frame_count with stride s = 30 / target_fps.
/// Throws Error(kNonDivisorFps) unless target_fps divides 30.
std::vector<std::int64_t> subsample_frames(std::int64_t frame_count, int target_fps);
std::vector<std::int64_t> subsample_frames(const FrameSequence& seq, int target_fps);

}  // namespace runlabel
