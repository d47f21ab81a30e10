#include "ingest/frames.hpp"

#include <sstream>

#include "core/error.hpp"
#include "core/json_io.hpp"

namespace runlabel {

std::filesystem::path FrameSequence::frame_path(std::int64_t frame_index) const {
  if (frame_index < 0 || frame_index >= frame_count()) {
    throw Error(ErrorCode::kNotFound, "video " + video_id + " has no frame " + std::to_string(frame_index));
  }
  return directory / file_names[static_cast<std::size_t>(frame_index)];
}

FrameSequence load_frame_sequence(const std::filesystem::path& directory, std::string video_id) {
  FrameSequence seq{std::move(video_id), directory, {}, kSourceFps};
  std::istringstream in(read_text_file(directory / kFrameListName));
  std::string line;
  long long previous = -1;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.find('/') != std::string::npos) {
      throw Error(ErrorCode::kMalformedManifest,
                  "frames.txt line " + std::to_string(line_no) + ": frame names must be bare file names");
    }
    const auto stem = std::filesystem::path(line).stem().string();
    auto digits_start = stem.find_last_not_of("0123456789");
    digits_start = digits_start == std::string::npos ? 0 : digits_start + 1;
    if (digits_start == stem.size()) {
      throw Error(ErrorCode::kMalformedManifest,
                  "frames.txt line " + std::to_string(line_no) + ": '" + line + "' has no frame number");
    }
    const long long number = std::stoll(stem.substr(digits_start));
    if (number <= previous) {
      throw Error(ErrorCode::kMalformedManifest,
                  "frames.txt line " + std::to_string(line_no) + ": '" + line + "' is out of order");
    }
    previous = number;
    seq.file_names.push_back(line);
  }
  return seq;
}

std::vector<std::int64_t> subsample_frames(std::int64_t frame_count, int target_fps) {
  if (target_fps <= 0 || kSourceFps % target_fps != 0) {
    throw Error(ErrorCode::kNonDivisorFps,
                "target fps " + std::to_string(target_fps) + " does not divide 30");
  }
  if (frame_count < 0) throw Error(ErrorCode::kInvalidArgument, "negative frame count");
  const std::int64_t stride = kSourceFps / target_fps;
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>((frame_count + stride - 1) / stride));
  for (std::int64_t f = 0; f < frame_count; f += stride) out.push_back(f);
  return out;
}

std::vector<std::int64_t> subsample_frames(const FrameSequence& seq, int target_fps) {
  if (target_fps <= 0 || seq.source_fps % target_fps != 0) {
    throw Error(ErrorCode::kNonDivisorFps, "target fps " + std::to_string(target_fps) +
                                               " does not divide " + std::to_string(seq.source_fps));
  }
  return subsample_frames(seq.frame_count(), target_fps);
}

}  // namespace runlabel
