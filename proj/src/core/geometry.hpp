#pragma once

#include <array>
#include <cstdint>

namespace runlabel {

/// Axis-aligned pixel box. Coordinates are real-valued so interpolated boxes
/// keep their fractional positions; rounding happens only on export.
class BoundingBox {
 public:
  /// Throws Error(kDegenerateBox) unless x_min < x_max and y_min < y_max,
  /// Error(kNegativeCoordinate) if any coordinate is below zero.
  static BoundingBox make(double x_min, double y_min, double x_max, double y_max);

  double x_min() const noexcept { return x_min_; }
  double y_min() const noexcept { return y_min_; }
  double x_max() const noexcept { return x_max_; }
  double y_max() const noexcept { return y_max_; }

  double width() const noexcept { return x_max_ - x_min_; }
  double height() const noexcept { return y_max_ - y_min_; }
  double area() const noexcept { return width() * height(); }

  /// Inclusive on all four edges.
  bool contains(double x, double y) const noexcept;

  std::array<double, 4> corners() const noexcept { return {x_min_, y_min_, x_max_, y_max_}; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  BoundingBox(double x_min, double y_min, double x_max, double y_max)
      : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {}

  double x_min_;
  double y_min_;
  double x_max_;
  double y_max_;
};

inline BoundingBox make_box(double x_min, double y_min, double x_max, double y_max) {
  return BoundingBox::make(x_min, y_min, x_max, y_max);
}

inline bool box_contains_point(const BoundingBox& box, double x, double y) {
  return box.contains(x, y);
}

/// Overlap area over union area; 0 for disjoint or edge-touching boxes.
double iou(const BoundingBox& a, const BoundingBox& b) noexcept;

/// Half-up rounding of each corner (floor(c + 0.5)).
std::array<std::int64_t, 4> round_half_up(const BoundingBox& box) noexcept;

}  // namespace runlabel
