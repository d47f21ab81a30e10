#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/identity.hpp"
#include "core/json_io.hpp"

namespace runlabel {

inline constexpr std::size_t kDefaultTopK = 20;

struct GalleryImage {
  std::string image_id;
  std::optional<Identity> runner_label;
  std::vector<double> feature;
};

struct RankedImage {
  std::string image_id;
  double distance = 0;
};

/// Gallery features file: [{"image_id": ..., "label"?: "42", "feature": [...]}].
/// Throws Error(kDimensionMismatch) if features differ in length.
std::vector<GalleryImage> parse_gallery(const Json& j);
std::vector<GalleryImage> load_gallery(const std::filesystem::path& path);
Json gallery_to_json(const std::vector<GalleryImage>& gallery);

/// The k gallery images closest to the probe in Euclidean distance, nearest
/// first; equal distances keep gallery order.
/// Errors: kEmptyGallery, kDimensionMismatch.
std::vector<RankedImage> reid_rank(std::span<const GalleryImage> gallery, std::span<const double> probe,
                                   std::size_t k = kDefaultTopK);

Json ranking_to_json(const std::vector<RankedImage>& ranking);

}  // namespace runlabel
