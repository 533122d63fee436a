#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vrc/camera.hpp"
#include "vrc/cockpit.hpp"
#include "vrc/flow.hpp"
#include "vrc/frame.hpp"

namespace vrc {

// Aggregates over one labelled pixel region of a frame. Optional fields are
// absent when the region has no usable pixels for that quantity.
struct RegionStats {
  std::string label;  // inside-panels | outside-panels | full
  std::optional<double> mean_flow_deg_s;
  std::optional<double> depth_range_m;  // max - min over finite depths
  size_t pixels = 0;                    // region size
  size_t flow_pixels = 0;               // valid flow samples behind the mean
};

// Splits the frame by the panel mask and aggregates angular flow speed and
// depth range per region. flow may be null (first rendered tick); flow means
// are then absent. Angular conversion uses the per-pixel ray directions.
std::array<RegionStats, 3> region_stats(const FrameBundle& bundle, const FlowField* flow,
                                        const Mask& mask, const Camera& camera, double dt);

// One CSV row per region: tick,region,mean_flow_deg_s,depth_range_m,pixels.
// Absent values serialize as empty fields. regions, when non-empty, selects
// labels to emit. Shared by the inline and offline metrics paths so the two
// outputs are byte-identical.
std::string metrics_csv_header(uint64_t config_hash);
void append_metrics_csv(std::string& out, int tick, const std::array<RegionStats, 3>& stats,
                        const std::vector<std::string>& regions = {});

// Renders the composed and plain views at the given pose and reports, per rig
// panel, the maximum absolute 8-bit channel difference inside the panel's
// visible region (absent when the panel is outside the view). Throws when the
// plain render's depth buffer shows world geometry nearer than the panel
// distance inside a tested region.
struct FidelityReport {
  std::vector<std::optional<int>> max_channel_dev;  // rig panel order
};

FidelityReport fidelity_report(const Scene& scene, const Pose& body_pose, double head_yaw,
                               double head_pitch, const CockpitRig& rig, const Camera& camera);

// Capture-texture digests over a sweep of head offsets (yaw, pitch) at a
// fixed body pose. Returns the sorted unique hash set per rig panel: size 1
// means the panel content ignored the head entirely.
std::vector<std::vector<uint64_t>> decoupling_report(
    const Scene& scene, const Pose& body_pose,
    const std::vector<std::pair<double, double>>& head_offsets, const CockpitRig& rig);

uint64_t image_digest(const Image8& img);

}  // namespace vrc
