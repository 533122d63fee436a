#pragma once

#include <optional>
#include <utility>

#include "vrc/geometry.hpp"

namespace vrc {

// Pinhole camera. Square pixels; the image plane coordinate is the tangent of
// the view angle, so hfov plus the pixel resolution fixes the full geometry.
// u grows rightward (toward -Y in the camera frame), v grows downward
// (toward -Z). Pixel (i, j) has center (i + 0.5, j + 0.5).
struct Camera {
  Pose pose;
  double hfov = kPi / 2.0;  // horizontal field of view, radians
  int width = 320;
  int height = 240;
  // When grid_width > 0 the camera is a window into a larger pixel grid: rays
  // go through pixels (grid_x + px, grid_y + py) of a grid_width x
  // grid_height image with this hfov. The window's rays are then
  // bit-identical to the parent camera's at the shifted pixel coordinates,
  // which the grid-aligned cockpit captures rely on.
  int grid_width = 0, grid_height = 0;
  int grid_x = 0, grid_y = 0;

  int ref_w() const { return grid_width > 0 ? grid_width : width; }
  int ref_h() const { return grid_width > 0 ? grid_height : height; }
  double aspect() const { return static_cast<double>(ref_w()) / ref_h(); }
  double half_tan_w() const { return std::tan(hfov / 2.0); }
  double half_tan_h() const { return half_tan_w() * ref_h() / ref_w(); }
  double vfov() const { return 2.0 * std::atan(half_tan_h()); }

  bool operator==(const Camera&) const = default;
};

void validate_camera(const Camera& c);

struct Ray {
  Vec3 origin;
  Vec3 direction;  // unit
};

// Ray through the center of pixel (px, py). Throws on out-of-range pixels.
Ray camera_ray(const Camera& cam, int px, int py);

// Ray through continuous image coordinates (u, v) in [0, w] x [0, h].
Ray camera_ray_at(const Camera& cam, double u, double v);

// Continuous image coordinates of a world point, or nullopt when the point is
// on or behind the camera plane.
std::optional<std::pair<double, double>> project(const Camera& cam, const Vec3& point);

}  // namespace vrc
