#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace runlabel {

inline constexpr int kEmbedSide = 8;
inline constexpr std::size_t kEmbedLength = kEmbedSide * kEmbedSide * 3;

/// Interleaved 8-bit RGB pixels, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

/// Decodes PNG/JPEG/... bytes. Throws Error(kUndecodableImage).
RgbImage decode_image(std::span<const std::uint8_t> encoded);

/// Stand-in appearance feature: area-downsample to 8x8, flatten RGB
/// row-major, scale to [0, 1]. Always 192 values.
std::vector<double> baseline_embed(const RgbImage& image);
std::vector<double> baseline_embed(std::span<const std::uint8_t> encoded);

/// Encodes RGB pixels as PNG (fixtures, frame previews).
std::vector<std::uint8_t> encode_png(const RgbImage& image);

}  // namespace runlabel
