#include "vrc/cockpit.hpp"

#include <cmath>
#include <stdexcept>

#include "vrc/parallel.hpp"

namespace vrc {

const char* panel_direction_name(PanelDirection d) {
  switch (d) {
    case PanelDirection::Front: return "front";
    case PanelDirection::Back: return "back";
    case PanelDirection::Left: return "left";
    case PanelDirection::Right: return "right";
  }
  throw std::invalid_argument("bad panel direction");
}

double cardinal_yaw(PanelDirection d) {
  switch (d) {
    case PanelDirection::Front: return 0.0;
    case PanelDirection::Back: return kPi;
    case PanelDirection::Left: return kPi / 2.0;
    case PanelDirection::Right: return -kPi / 2.0;
  }
  throw std::invalid_argument("bad panel direction");
}

void validate_cockpit_config(const CockpitConfig& c) {
  if (!(c.coverage > 0.0 && c.coverage <= 1.0))
    throw std::invalid_argument("cockpit coverage must be in (0, 1]");
  if (!(c.distance > 0.0) || !std::isfinite(c.distance))
    throw std::invalid_argument("cockpit distance must be positive and finite");
  if ((c.capture_width == 0) != (c.capture_height == 0))
    throw std::invalid_argument("capture resolution must set both dimensions or neither");
  if (c.capture_width != 0 && (c.capture_width < 8 || c.capture_height < 8))
    throw std::invalid_argument("explicit capture resolution must be at least 8x8");
  bool any = false;
  for (bool e : c.enabled) any = any || e;
  if (!any) throw std::invalid_argument("cockpit rig must enable at least one panel");
}

std::pair<double, double> frame_angular_extents(double coverage, double hfov, double vfov) {
  if (!(coverage > 0.0 && coverage <= 1.0))
    throw std::invalid_argument("coverage must be in (0, 1]");
  if (!(hfov > 0.0 && hfov < kPi) || !(vfov > 0.0 && vfov < kPi))
    throw std::invalid_argument("field of view must be in (0, pi)");
  double s = std::sqrt(coverage);
  return {std::atan(s * std::tan(hfov / 2.0)), std::atan(s * std::tan(vfov / 2.0))};
}

namespace {

// Smallest integer >= x sharing parity with ref. Keeping the parity of the
// head resolution centers the capture grid on the head grid, so an aligned
// front panel resamples the head render at exact texel centers.
int aligned_dim(double x, int ref) {
  int k = static_cast<int>(std::ceil(x - 1e-9));
  if (((k ^ ref) & 1) != 0) ++k;
  return k;
}

}  // namespace

CockpitRig make_cockpit_rig(const CockpitConfig& config, const Camera& head_camera) {
  validate_cockpit_config(config);
  validate_camera(head_camera);

  auto [alpha, beta] = frame_angular_extents(config.coverage, head_camera.hfov,
                                             head_camera.vfov());
  double ta = std::tan(alpha), tb = std::tan(beta);

  // Capture camera shared by all panels, pose filled per direction below.
  Camera cap;
  PanelUv uv;
  if (config.capture_width == 0) {
    // Derived grid: a centered window of the head camera's pixel grid. The
    // window shares the head camera's per-pixel ray math bit for bit, so an
    // aligned panel resamples the head render at exact texel centers with
    // exactly the head ray directions. Silhouette pixels stay byte-identical
    // because a one-ulp direction difference could land on the far side of
    // an edge.
    double s = std::sqrt(config.coverage);
    cap.width = aligned_dim(s * head_camera.width, head_camera.width);
    cap.height = aligned_dim(s * head_camera.height, head_camera.height);
    cap.hfov = head_camera.hfov;
    cap.grid_width = head_camera.width;
    cap.grid_height = head_camera.height;
    cap.grid_x = (head_camera.width - cap.width) / 2;  // parity match: exact center
    cap.grid_y = (head_camera.height - cap.height) / 2;
    double htw = head_camera.half_tan_w(), htv = head_camera.half_tan_h();
    uv.u0 = (1.0 - ta / htw) * head_camera.width / 2.0 - cap.grid_x;
    uv.du = (ta / htw) * head_camera.width;
    uv.v0 = (1.0 - tb / htv) * head_camera.height / 2.0 - cap.grid_y;
    uv.dv = (tb / htv) * head_camera.height;
  } else {
    // Explicit resolution: tightest standalone frustum containing the panel
    // with square pixels.
    cap.width = config.capture_width;
    cap.height = config.capture_height;
    double half_tan_cw = std::max(ta, tb * cap.width / cap.height);
    cap.hfov = 2.0 * std::atan(half_tan_cw);
    double hcw = cap.half_tan_w(), hcv = cap.half_tan_h();
    uv.u0 = (1.0 - ta / hcw) * cap.width / 2.0;
    uv.du = (ta / hcw) * cap.width;
    uv.v0 = (1.0 - tb / hcv) * cap.height / 2.0;
    uv.dv = (tb / hcv) * cap.height;
  }

  CockpitRig rig;
  rig.config = config;

  double d = config.distance;
  double w = d * ta, h = d * tb;
  std::array<Vec3, 4> base{Vec3{d, w, h}, Vec3{d, -w, h}, Vec3{d, -w, -h}, Vec3{d, w, -h}};

  for (int i = 0; i < 4; ++i) {
    if (!config.enabled[static_cast<size_t>(i)]) continue;
    auto dir = static_cast<PanelDirection>(i);
    double cyaw = cardinal_yaw(dir);
    Mat3 r = rot_yaw(cyaw);

    FramePanel panel;
    panel.direction = dir;
    panel.alpha = alpha;
    panel.beta = beta;
    for (size_t c = 0; c < 4; ++c) panel.corners[c] = r * base[c];
    rig.panels.push_back(panel);

    Camera cam = cap;
    cam.pose = Pose{Vec3{}, cyaw, 0.0, 0.0};
    rig.capture_cameras.push_back(cam);
    rig.uvs.push_back(uv);
  }
  return rig;
}

Pose anchor_frame(const CockpitRig& rig, const Pose& body_pose, double head_yaw,
                  double head_pitch) {
  validate_pose(body_pose);
  if (!std::isfinite(head_yaw) || !std::isfinite(head_pitch))
    throw std::invalid_argument("head offset has non-finite components");
  if (rig.config.anchor == AnchorMode::Body) {
    return Pose{body_pose.position, body_pose.yaw, 0.0, 0.0};
  }
  return Pose{body_pose.position, wrap_angle(body_pose.yaw + head_yaw), head_pitch, 0.0};
}

Camera head_camera(const Camera& view_template, const Pose& body_pose, double head_yaw,
                   double head_pitch) {
  validate_camera(view_template);
  validate_pose(body_pose);
  Camera cam = view_template;
  cam.pose = Pose{body_pose.position, wrap_angle(body_pose.yaw + head_yaw), head_pitch, 0.0};
  return cam;
}

CockpitPrev snapshot_cockpit_prev(const CockpitRig& rig, const Scene& scene,
                                  const Pose& body_pose, double head_yaw, double head_pitch,
                                  const Camera& view_template) {
  CockpitPrev prev;
  prev.head_camera_pose = head_camera(view_template, body_pose, head_yaw, head_pitch).pose;
  prev.anchor_pose = anchor_frame(rig, body_pose, head_yaw, head_pitch);
  prev.entity_poses.reserve(scene.entities.size());
  for (const auto& e : scene.entities) prev.entity_poses.push_back(e.pose);
  return prev;
}

namespace {

void require_no_panels(const Scene& scene) {
  for (const auto& e : scene.entities) {
    if (e.role == Role::CockpitPanel)
      throw std::invalid_argument("scene already contains cockpit panel entities");
  }
}

}  // namespace

std::vector<FrameBundle> capture_views(const Scene& scene, const Pose& anchor_pose,
                                       const CockpitRig& rig, const CockpitPrev* prev) {
  require_no_panels(scene);
  validate_pose(anchor_pose);
  std::vector<FrameBundle> out;
  out.reserve(rig.panels.size());
  for (size_t k = 0; k < rig.panels.size(); ++k) {
    Camera cam = rig.capture_cameras[k];
    cam.pose = compose_pose(anchor_pose, rig.capture_cameras[k].pose);
    if (prev) {
      RenderPrev rp;
      rp.camera_pose = compose_pose(prev->anchor_pose, rig.capture_cameras[k].pose);
      rp.entity_poses = prev->entity_poses;
      out.push_back(render(scene, cam, &rp));
    } else {
      out.push_back(render(scene, cam));
    }
  }
  return out;
}

ComposeResult compose(const Scene& scene, const Pose& body_pose, double head_yaw,
                      double head_pitch, const CockpitRig& rig, const Camera& view_template,
                      const CockpitPrev* prev) {
  require_no_panels(scene);
  Pose anchor = anchor_frame(rig, body_pose, head_yaw, head_pitch);

  ComposeResult result;
  result.captures = capture_views(scene, anchor, rig, prev);

  Scene augmented = scene;
  for (size_t k = 0; k < rig.panels.size(); ++k) {
    Entity e;
    e.shape = Quad{rig.panels[k].corners};
    e.role = Role::CockpitPanel;
    e.pose = anchor;
    e.panel_texture = &result.captures[k].color;
    e.panel_uv = rig.uvs[k];
    result.panel_ids.push_back(augmented.add(e).id);
  }

  Camera cam = head_camera(view_template, body_pose, head_yaw, head_pitch);
  if (prev) {
    RenderPrev rp;
    rp.camera_pose = prev->head_camera_pose;
    rp.entity_poses = prev->entity_poses;
    rp.entity_poses.resize(augmented.entities.size(), prev->anchor_pose);
    result.frame = render(augmented, cam, &rp);
  } else {
    result.frame = render(augmented, cam);
  }
  return result;
}

namespace {

Mask region_mask_impl(const Camera& view_template, const Pose& body_pose, double head_yaw,
                      double head_pitch, const CockpitRig& rig, int only_panel) {
  Camera cam = head_camera(view_template, body_pose, head_yaw, head_pitch);
  Pose anchor = anchor_frame(rig, body_pose, head_yaw, head_pitch);

  std::vector<Entity> quads;
  for (size_t k = 0; k < rig.panels.size(); ++k) {
    if (only_panel >= 0 && static_cast<size_t>(only_panel) != k) continue;
    Entity e;
    e.id = static_cast<int32_t>(k + 1);
    e.shape = Quad{rig.panels[k].corners};
    e.role = Role::CockpitPanel;
    e.pose = anchor;
    quads.push_back(e);
  }

  Mask mask(cam.width, cam.height);
  parallel_for(cam.height, [&](int j) {
    for (int i = 0; i < cam.width; ++i) {
      Ray ray = camera_ray(cam, i, j);
      for (const auto& q : quads) {
        if (intersect_entity(q, ray.origin, ray.direction, 1e9)) {
          mask.set(i, j, 1);
          break;
        }
      }
    }
  });
  return mask;
}

}  // namespace

Mask frame_region_mask(const Camera& view_template, const Pose& body_pose, double head_yaw,
                       double head_pitch, const CockpitRig& rig) {
  return region_mask_impl(view_template, body_pose, head_yaw, head_pitch, rig, -1);
}

Mask panel_region_mask(const Camera& view_template, const Pose& body_pose, double head_yaw,
                       double head_pitch, const CockpitRig& rig, size_t panel_index) {
  if (panel_index >= rig.panels.size())
    throw std::out_of_range("panel index out of range");
  return region_mask_impl(view_template, body_pose, head_yaw, head_pitch, rig,
                          static_cast<int>(panel_index));
}

}  // namespace vrc
