#include "engine/interpolate.hpp"

#include "core/error.hpp"

namespace runlabel {

DenseBoxes interpolate_keyframes(std::span<const KeyframeAnnotation> keyframes) {
  DenseBoxes out;
  if (keyframes.empty()) throw Error(ErrorCode::kInvalidTrack, "no keyframes to interpolate");
  for (std::size_t k = 0; k + 1 < keyframes.size(); ++k) {
    const auto& a = keyframes[k];
    const auto& b = keyframes[k + 1];
    const auto f1 = a.frame.frame_index;
    const auto f2 = b.frame.frame_index;
    if (f2 <= f1) {
      throw Error(ErrorCode::kInvalidTrack, "keyframes not strictly increasing at frame " + std::to_string(f2));
    }
    const auto ca = a.box.corners();
    const auto cb = b.box.corners();
    const double span = static_cast<double>(f2 - f1);
    out.emplace(f1, a.box);
    for (auto f = f1 + 1; f < f2; ++f) {
      const double t = static_cast<double>(f - f1) / span;
      std::array<double, 4> c{};
      for (std::size_t i = 0; i < 4; ++i) c[i] = ca[i] + (cb[i] - ca[i]) * t;
      // Convex combination of two valid boxes, so the invariants hold.
      out.emplace(f, BoundingBox::make(c[0], c[1], c[2], c[3]));
    }
  }
  out.emplace(keyframes.back().frame.frame_index, keyframes.back().box);
  return out;
}

}  // namespace runlabel
