#pragma once

#include <array>
#include <utility>
#include <vector>

#include "vrc/camera.hpp"
#include "vrc/frame.hpp"
#include "vrc/render.hpp"
#include "vrc/scene.hpp"

namespace vrc {

// Cardinal directions in the anchor (body) frame: Front +X, Back -X,
// Left +Y, Right -Y.
enum class PanelDirection : int { Front = 0, Back = 1, Left = 2, Right = 3 };

const char* panel_direction_name(PanelDirection d);
double cardinal_yaw(PanelDirection d);

// Body: panels follow the body's position and yaw only, so they stay
// gravity-level when the vehicle pitches and ignore the head entirely.
// Head: panels follow the full head orientation (view-locked variant).
enum class AnchorMode { Body, Head };

struct CockpitConfig {
  double coverage = 0.30;  // projected viewport area fraction per panel
  double distance = 1.0;   // panel distance from the eye, meters
  AnchorMode anchor = AnchorMode::Body;
  std::array<bool, 4> enabled{true, true, true, true};  // indexed by PanelDirection
  // 0 = derive a capture grid aligned with the head camera's pixel grid,
  // which makes an aligned panel an exact pass-through of the world render.
  int capture_width = 0;
  int capture_height = 0;
};

void validate_cockpit_config(const CockpitConfig& c);

// Borderless textured quad, perpendicular to its cardinal direction at
// distance d, centered at eye height.
struct FramePanel {
  PanelDirection direction;
  std::array<Vec3, 4> corners;  // body frame; [0]=top-left of the capture view
  double alpha = 0.0;           // horizontal angular half-extent
  double beta = 0.0;            // vertical angular half-extent
};

struct CockpitRig {
  CockpitConfig config;
  std::vector<FramePanel> panels;
  // Capture camera per panel, posed in the anchor frame (position at the
  // eye, orientation = the panel's cardinal yaw).
  std::vector<Camera> capture_cameras;
  // Affine map from panel (s,t) to capture-image coordinates.
  std::vector<PanelUv> uvs;
};

// Half-extent angles (alpha, beta) such that a panel subtending them covers
// the given fraction of the viewport area when viewed head-on:
// tan(alpha) = sqrt(c) * tan(hfov/2), tan(beta) = sqrt(c) * tan(vfov/2).
std::pair<double, double> frame_angular_extents(double coverage, double hfov, double vfov);

CockpitRig make_cockpit_rig(const CockpitConfig& config, const Camera& head_camera);

// Anchor frame for the rig given the body pose and the head offset.
Pose anchor_frame(const CockpitRig& rig, const Pose& body_pose, double head_yaw,
                  double head_pitch);

// Head camera pose: seated model, body yaw plus the head offset. Body pitch
// and roll (vehicle attitude) do not rotate the view.
Camera head_camera(const Camera& view_template, const Pose& body_pose, double head_yaw,
                   double head_pitch);

// Previous-tick state for motion buffers across compose/capture.
struct CockpitPrev {
  Pose head_camera_pose;
  Pose anchor_pose;
  std::vector<Pose> entity_poses;
};

CockpitPrev snapshot_cockpit_prev(const CockpitRig& rig, const Scene& scene,
                                  const Pose& body_pose, double head_yaw, double head_pitch,
                                  const Camera& view_template);

// One world render per panel from the eye point along the panel's cardinal
// direction in the anchor frame. The scene must not contain CockpitPanel
// entities.
std::vector<FrameBundle> capture_views(const Scene& scene, const Pose& anchor_pose,
                                       const CockpitRig& rig, const CockpitPrev* prev = nullptr);

struct ComposeResult {
  FrameBundle frame;
  std::vector<FrameBundle> captures;   // one per enabled panel
  std::vector<int32_t> panel_ids;      // entity ids of the panel quads in `frame`
};

// Renders the world plus the textured panel quads. Panels are opaque and
// unlit, depth-tested at their true distance: nearer world geometry occludes
// them, farther geometry is hidden behind them.
ComposeResult compose(const Scene& scene, const Pose& body_pose, double head_yaw,
                      double head_pitch, const CockpitRig& rig, const Camera& view_template,
                      const CockpitPrev* prev = nullptr);

// Pure panel geometry: pixel set iff its view ray passes through an enabled
// panel quad, independent of any scene content.
Mask frame_region_mask(const Camera& view_template, const Pose& body_pose, double head_yaw,
                       double head_pitch, const CockpitRig& rig);

// Mask for a single panel of the rig.
Mask panel_region_mask(const Camera& view_template, const Pose& body_pose, double head_yaw,
                       double head_pitch, const CockpitRig& rig, size_t panel_index);

}  // namespace vrc
