#include "vrc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "vrc/hash.hpp"
#include "vrc/render.hpp"

namespace vrc {

namespace {

double angular_step_deg(const Camera& cam, double u, double v, double du, double dv,
                        double dt) {
  Vec3 r1 = camera_ray_at(cam, u, v).direction;
  Vec3 r2 = camera_ray_at(cam, u + du, v + dv).direction;
  double chord = norm(r2 - r1);
  double theta = 2.0 * std::asin(std::clamp(chord / 2.0, 0.0, 1.0));
  return rad_to_deg(theta) / dt;
}

struct Accum {
  double flow_sum = 0.0;
  size_t flow_n = 0;
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = -std::numeric_limits<double>::infinity();
  size_t depth_n = 0;
  size_t pixels = 0;

  void finish(RegionStats& r) const {
    r.pixels = pixels;
    r.flow_pixels = flow_n;
    if (flow_n > 0) r.mean_flow_deg_s = flow_sum / static_cast<double>(flow_n);
    if (depth_n > 0) r.depth_range_m = dmax - dmin;
  }
};

}  // namespace

std::array<RegionStats, 3> region_stats(const FrameBundle& bundle, const FlowField* flow,
                                        const Mask& mask, const Camera& camera, double dt) {
  if (mask.width != bundle.width || mask.height != bundle.height)
    throw std::invalid_argument("mask dimensions do not match the frame");
  if (flow && (flow->width != bundle.width || flow->height != bundle.height))
    throw std::invalid_argument("flow dimensions do not match the frame");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

  Accum inside, outside, full;
  for (int y = 0; y < bundle.height; ++y) {
    for (int x = 0; x < bundle.width; ++x) {
      size_t k = bundle.idx(x, y);
      bool in = mask.at(x, y) != 0;
      Accum* regs[2] = {in ? &inside : &outside, &full};
      double depth = bundle.depth[k];
      bool have_flow = flow && flow->valid[k];
      double step = 0.0;
      if (have_flow) {
        step = angular_step_deg(camera, x + 0.5, y + 0.5, flow->flow[2 * k],
                                flow->flow[2 * k + 1], dt);
      }
      for (Accum* a : regs) {
        a->pixels += 1;
        if (std::isfinite(depth)) {
          a->dmin = std::min(a->dmin, depth);
          a->dmax = std::max(a->dmax, depth);
          a->depth_n += 1;
        }
        if (have_flow) {
          a->flow_sum += step;
          a->flow_n += 1;
        }
      }
    }
  }

  std::array<RegionStats, 3> out;
  out[0].label = "inside-panels";
  out[1].label = "outside-panels";
  out[2].label = "full";
  inside.finish(out[0]);
  outside.finish(out[1]);
  full.finish(out[2]);
  return out;
}

std::string metrics_csv_header(uint64_t config_hash) {
  return "# cfg=" + to_hex(config_hash) + "\n# columns: tick,region,mean_flow_deg_s,depth_range_m,pixels\n";
}

void append_metrics_csv(std::string& out, int tick, const std::array<RegionStats, 3>& stats,
                        const std::vector<std::string>& regions) {
  char buf[160];
  for (const auto& r : stats) {
    if (!regions.empty() &&
        std::find(regions.begin(), regions.end(), r.label) == regions.end())
      continue;
    std::string flow_s, depth_s;
    if (r.mean_flow_deg_s) {
      std::snprintf(buf, sizeof(buf), "%.6f", *r.mean_flow_deg_s);
      flow_s = buf;
    }
    if (r.depth_range_m) {
      std::snprintf(buf, sizeof(buf), "%.6f", *r.depth_range_m);
      depth_s = buf;
    }
    std::snprintf(buf, sizeof(buf), "%d,%s,%s,%s,%zu\n", tick, r.label.c_str(), flow_s.c_str(),
                  depth_s.c_str(), r.pixels);
    out += buf;
  }
}

FidelityReport fidelity_report(const Scene& scene, const Pose& body_pose, double head_yaw,
                               double head_pitch, const CockpitRig& rig, const Camera& camera) {
  ComposeResult cp = compose(scene, body_pose, head_yaw, head_pitch, rig, camera);
  Camera cam = head_camera(camera, body_pose, head_yaw, head_pitch);
  FrameBundle plain = render(scene, cam);

  FidelityReport report;
  report.max_channel_dev.resize(rig.panels.size());
  for (size_t k = 0; k < rig.panels.size(); ++k) {
    Mask region = panel_region_mask(camera, body_pose, head_yaw, head_pitch, rig, k);
    int dev = -1;
    for (int y = 0; y < plain.height; ++y) {
      for (int x = 0; x < plain.width; ++x) {
        if (!region.at(x, y)) continue;
        size_t i = plain.idx(x, y);
        if (plain.depth[i] < rig.config.distance - 1e-6) {
          throw std::invalid_argument(
              "world geometry nearer than the panel distance inside the " +
              std::string(panel_direction_name(rig.panels[k].direction)) + " panel region");
        }
        const uint8_t* a = cp.frame.color.px(x, y);
        const uint8_t* b = plain.color.px(x, y);
        for (int c = 0; c < 3; ++c) dev = std::max(dev, std::abs(int(a[c]) - int(b[c])));
      }
    }
    if (dev >= 0) report.max_channel_dev[k] = dev;
  }
  return report;
}

uint64_t image_digest(const Image8& img) {
  return fnv1a64(img.rgb.data(), img.rgb.size());
}

std::vector<std::vector<uint64_t>> decoupling_report(
    const Scene& scene, const Pose& body_pose,
    const std::vector<std::pair<double, double>>& head_offsets, const CockpitRig& rig) {
  std::vector<std::vector<uint64_t>> per_panel(rig.panels.size());
  for (const auto& [yaw, pitch] : head_offsets) {
    Pose anchor = anchor_frame(rig, body_pose, yaw, pitch);
    std::vector<FrameBundle> captures = capture_views(scene, anchor, rig);
    for (size_t k = 0; k < captures.size(); ++k)
      per_panel[k].push_back(image_digest(captures[k].color));
  }
  for (auto& hashes : per_panel) {
    std::sort(hashes.begin(), hashes.end());
    hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
  }
  return per_panel;
}

}  // namespace vrc
