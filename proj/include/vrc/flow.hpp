#pragma once

#include <cstdint>
#include <vector>

#include "vrc/frame.hpp"

namespace vrc {

// Dense per-pixel displacement estimate between two frames, in pixels per
// frame, same sign convention as FrameBundle::motion (content movement from
// prev to curr).
struct FlowField {
  int width = 0, height = 0;
  std::vector<float> flow;     // 2 * width * height, (du, dv)
  std::vector<uint8_t> valid;  // 1 where the estimate is usable

  FlowField() = default;
  FlowField(int w, int h)
      : width(w),
        height(h),
        flow(static_cast<size_t>(w) * h * 2, 0.0f),
        valid(static_cast<size_t>(w) * h, 0) {}

  size_t idx(int x, int y) const { return static_cast<size_t>(y) * width + x; }
  bool operator==(const FlowField&) const = default;
};

// Validity threshold on the smaller eigenvalue of the 5x5-window structure
// tensor (summed, luminance in [0,1]).
constexpr double kFlowTau = 1e-3;

// Single-level Lucas-Kanade on Rec.601 luminance: 5x5 window, central
// difference gradients on the frame average. Pixels without a full window
// (3 px border) are invalid. Throws on dimension mismatch.
FlowField estimate_flow(const FrameBundle& prev, const FrameBundle& curr);

// Serial twin of estimate_flow, bit-identical output; kept as the reference
// for parallel correctness tests and the benchmark.
FlowField estimate_flow_reference(const FrameBundle& prev, const FrameBundle& curr);

}  // namespace vrc
