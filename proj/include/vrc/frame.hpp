#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace vrc {

// Interleaved 8-bit RGB image.
struct Image8 {
  int width = 0, height = 0;
  std::vector<uint8_t> rgb;  // 3 * width * height

  Image8() = default;
  Image8(int w, int h) : width(w), height(h), rgb(static_cast<size_t>(w) * h * 3, 0) {}

  uint8_t* px(int x, int y) { return rgb.data() + 3 * (static_cast<size_t>(y) * width + x); }
  const uint8_t* px(int x, int y) const {
    return rgb.data() + 3 * (static_cast<size_t>(y) * width + x);
  }
  bool operator==(const Image8&) const = default;
};

// Binary mask over an image.
struct Mask {
  int width = 0, height = 0;
  std::vector<uint8_t> bits;  // 0 or 1 per pixel

  Mask() = default;
  Mask(int w, int h) : width(w), height(h), bits(static_cast<size_t>(w) * h, 0) {}

  uint8_t at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x]; }
  void set(int x, int y, uint8_t v) { bits[static_cast<size_t>(y) * width + x] = v; }
  size_t count() const;
  double fraction() const;
  bool operator==(const Mask&) const = default;
};

// One rendered view: color, depth, entity ids, and the analytic motion field.
// depth is the distance along the camera forward axis (z-depth), +infinity on
// miss. motion holds (du, dv) in pixels per frame relative to the previous
// state handed to render(), interleaved two floats per pixel.
struct FrameBundle {
  int width = 0, height = 0;
  Image8 color;
  std::vector<float> depth;
  std::vector<int32_t> entity_id;
  std::vector<float> motion;  // 2 * width * height

  FrameBundle() = default;
  FrameBundle(int w, int h)
      : width(w),
        height(h),
        color(w, h),
        depth(static_cast<size_t>(w) * h, std::numeric_limits<float>::infinity()),
        entity_id(static_cast<size_t>(w) * h, 0),
        motion(static_cast<size_t>(w) * h * 2, 0.0f) {}

  size_t idx(int x, int y) const { return static_cast<size_t>(y) * width + x; }
  bool operator==(const FrameBundle&) const = default;
};

}  // namespace vrc
