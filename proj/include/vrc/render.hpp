#pragma once

#include <vector>

#include "vrc/camera.hpp"
#include "vrc/frame.hpp"
#include "vrc/scene.hpp"

namespace vrc {

// State of the previous rendered tick, used to fill the analytic motion
// buffer. entity_poses is indexed by entity id - 1 and must cover every
// entity of the scene being rendered.
struct RenderPrev {
  Pose camera_pose;
  std::vector<Pose> entity_poses;
};

RenderPrev snapshot_prev(const Camera& camera, const Scene& scene);

// Renders one frame: a primary ray per pixel through query_ray, Lambertian +
// ambient shading (cockpit panels are textured and unlit), z-depth along the
// camera forward axis, and the reprojected motion field when prev is given.
// Parallel over rows; bit-identical across runs and thread counts.
FrameBundle render(const Scene& scene, const Camera& camera, const RenderPrev* prev = nullptr);

// Serial reference implementation, same per-pixel kernel without OpenMP.
FrameBundle render_reference(const Scene& scene, const Camera& camera,
                             const RenderPrev* prev = nullptr);

// Shared helpers (also used by the snapshot CLI and tests).
uint8_t quantize_channel(double v);  // clamp to [0,1], round half up to 0..255
Vec3 surface_albedo(const Entity& e, const Vec3& world_point);

}  // namespace vrc
