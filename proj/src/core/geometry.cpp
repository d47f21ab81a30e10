#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace runlabel {

BoundingBox BoundingBox::make(double x_min, double y_min, double x_max, double y_max) {
  auto describe = [&] {
    std::ostringstream os;
    os << "(" << x_min << ", " << y_min << ", " << x_max << ", " << y_max << ")";
    return os.str();
  };
  if (!std::isfinite(x_min) || !std::isfinite(y_min) || !std::isfinite(x_max) ||
      !std::isfinite(y_max)) {
    throw Error(ErrorCode::kDegenerateBox, "non-finite box coordinate " + describe());
  }
  if (x_min < 0 || y_min < 0 || x_max < 0 || y_max < 0) {
    throw Error(ErrorCode::kNegativeCoordinate, "negative box coordinate " + describe());
  }
  if (x_min >= x_max || y_min >= y_max) {
    throw Error(ErrorCode::kDegenerateBox, "zero-area box " + describe());
  }
  return BoundingBox(x_min, y_min, x_max, y_max);
}

bool BoundingBox::contains(double x, double y) const noexcept {
  return x_min_ <= x && x <= x_max_ && y_min_ <= y && y <= y_max_;
}

double iou(const BoundingBox& a, const BoundingBox& b) noexcept {
  const double ix = std::min(a.x_max(), b.x_max()) - std::max(a.x_min(), b.x_min());
  const double iy = std::min(a.y_max(), b.y_max()) - std::max(a.y_min(), b.y_min());
  if (ix <= 0 || iy <= 0) return 0.0;
  const double overlap = ix * iy;
  const double uni = a.area() + b.area() - overlap;
  return std::clamp(overlap / uni, 0.0, 1.0);
}

std::array<std::int64_t, 4> round_half_up(const BoundingBox& box) noexcept {
  auto r = [](double v) { return static_cast<std::int64_t>(std::floor(v + 0.5)); };
  return {r(box.x_min()), r(box.y_min()), r(box.x_max()), r(box.y_max())};
}

}  // namespace runlabel
