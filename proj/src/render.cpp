#include "vrc/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vrc/parallel.hpp"

namespace vrc {

namespace {

double smoothstep(double e0, double e1, double x) {
  double t = std::clamp((x - e0) / (e1 - e0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// Soft square wave alternating 0/1 per unit cell.
double checker_wave(double u, double softness) {
  double tri = 2.0 * std::abs(u / 2.0 - std::floor(u / 2.0 + 0.5));
  return smoothstep(0.5 - softness, 0.5 + softness, tri);
}

Vec3 sample_bilinear(const Image8& img, double u, double v) {
  double x = u - 0.5, y = v - 0.5;
  double fx = std::floor(x), fy = std::floor(y);
  int i0 = static_cast<int>(fx), j0 = static_cast<int>(fy);
  double ax = x - fx, ay = y - fy;
  int i1 = std::clamp(i0 + 1, 0, img.width - 1);
  int j1 = std::clamp(j0 + 1, 0, img.height - 1);
  i0 = std::clamp(i0, 0, img.width - 1);
  j0 = std::clamp(j0, 0, img.height - 1);
  const uint8_t* p00 = img.px(i0, j0);
  const uint8_t* p10 = img.px(i1, j0);
  const uint8_t* p01 = img.px(i0, j1);
  const uint8_t* p11 = img.px(i1, j1);
  Vec3 out;
  double* o = &out.x;
  for (int c = 0; c < 3; ++c) {
    double top = p00[c] * (1.0 - ax) + p10[c] * ax;
    double bot = p01[c] * (1.0 - ax) + p11[c] * ax;
    o[c] = (top * (1.0 - ay) + bot * ay) / 255.0;
  }
  return out;
}

struct PixelKernel {
  const Scene& scene;
  const Camera& camera;
  const RenderPrev* prev;
  const SceneIndex* index;  // null in the reference path, which scans linearly
  Vec3 cam_forward;
  Camera prev_camera;  // camera with the previous pose

  void operator()(FrameBundle& out, int px, int py) const {
    Ray ray = camera_ray(camera, px, py);
    size_t i = out.idx(px, py);
    auto hit = index != nullptr ? query_ray(*index, ray.origin, ray.direction, 1e9)
                                : query_ray(scene, ray.origin, ray.direction, 1e9);
    Vec3 color;
    if (!hit) {
      color = scene.background;
    } else {
      const Entity& e = scene.entities[static_cast<size_t>(hit->entity_id) - 1];
      if (e.role == Role::CockpitPanel && e.panel_texture != nullptr) {
        double u = e.panel_uv.u0 + hit->quad_s * e.panel_uv.du;
        double v = e.panel_uv.v0 + hit->quad_t * e.panel_uv.dv;
        color = sample_bilinear(*e.panel_texture, u, v);
      } else {
        Vec3 albedo = surface_albedo(e, hit->point);
        double diffuse = std::max(0.0, dot(hit->normal, scene.light_dir)) * scene.light_intensity;
        color = albedo * (diffuse + scene.ambient);
      }
      out.depth[i] = static_cast<float>(hit->t * dot(ray.direction, cam_forward));
      out.entity_id[i] = hit->entity_id;
      if (prev != nullptr) {
        const Pose& cur_pose = e.pose;
        const Pose& old_pose = prev->entity_poses[static_cast<size_t>(hit->entity_id) - 1];
        Vec3 prev_world = hit->point;
        if (!(cur_pose == old_pose)) {
          prev_world = old_pose.to_world(cur_pose.to_local(hit->point));
        }
        if (auto uv = project(prev_camera, prev_world)) {
          out.motion[2 * i] = static_cast<float>((px + 0.5) - uv->first);
          out.motion[2 * i + 1] = static_cast<float>((py + 0.5) - uv->second);
        }
      }
    }
    uint8_t* rgb = out.color.px(px, py);
    rgb[0] = quantize_channel(color.x);
    rgb[1] = quantize_channel(color.y);
    rgb[2] = quantize_channel(color.z);
  }
};

template <typename ForLoop>
FrameBundle render_impl(const Scene& scene, const Camera& camera, const RenderPrev* prev,
                        const SceneIndex* index, ForLoop&& rows) {
  validate_camera(camera);
  if (prev != nullptr && prev->entity_poses.size() < scene.entities.size())
    throw std::invalid_argument("render: prev snapshot does not cover all entities");
  FrameBundle out(camera.width, camera.height);
  PixelKernel kernel{scene, camera, prev, index, camera.pose.dir_to_world({1, 0, 0}), camera};
  if (prev != nullptr) kernel.prev_camera.pose = prev->camera_pose;
  rows(camera.height, [&](int y) {
    for (int x = 0; x < camera.width; ++x) kernel(out, x, y);
  });
  return out;
}

}  // namespace

uint8_t quantize_channel(double v) {
  double c = std::clamp(v, 0.0, 1.0);
  return static_cast<uint8_t>(std::floor(c * 255.0 + 0.5));
}

Vec3 surface_albedo(const Entity& e, const Vec3& world_point) {
  if (e.checker_cell <= 0.0) return e.albedo;
  double u = world_point.x / e.checker_cell;
  double v = world_point.y / e.checker_cell;
  double wu = checker_wave(u, e.checker_softness);
  double wv = checker_wave(v, e.checker_softness);
  double q = wu + wv - 2.0 * wu * wv;  // soft XOR
  return e.albedo * (1.0 - q) + e.checker_albedo * q;
}

RenderPrev snapshot_prev(const Camera& camera, const Scene& scene) {
  RenderPrev p;
  p.camera_pose = camera.pose;
  p.entity_poses.reserve(scene.entities.size());
  for (const Entity& e : scene.entities) p.entity_poses.push_back(e.pose);
  return p;
}

FrameBundle render(const Scene& scene, const Camera& camera, const RenderPrev* prev) {
  SceneIndex index = build_scene_index(scene);
  return render_impl(scene, camera, prev, &index,
                     [](int n, const std::function<void(int)>& f) { parallel_for(n, f); });
}

FrameBundle render_reference(const Scene& scene, const Camera& camera, const RenderPrev* prev) {
  return render_impl(scene, camera, prev, nullptr,
                     [](int n, const std::function<void(int)>& f) { serial_for(n, f); });
}

}  // namespace vrc
