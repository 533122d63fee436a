#include "doctest.h"

#include <cmath>

#include "vrc/cockpit.hpp"
#include "vrc/games.hpp"
#include "vrc/metrics.hpp"
#include "vrc/scene_build.hpp"

using namespace vrc;

namespace {

Camera default_view() {
  Camera cam;
  cam.width = 320;
  cam.height = 240;
  cam.hfov = kPi / 2;
  return cam;
}

Pose racing_start_pose() {
  TrackSpec spec = default_track_spec();
  Scene scene = build_racing_scene(spec, 1);
  return RacingSim(spec, scene).state().body;
}

}  // namespace

TEST_CASE("frame_angular_extents implements the area-coverage identity") {
  double hfov = kPi / 2, vfov = 2.0 * std::atan(0.75);
  for (double c : {0.05, 0.30, 0.60, 1.0}) {
    auto [alpha, beta] = frame_angular_extents(c, hfov, vfov);
    CHECK(std::tan(alpha) == doctest::Approx(std::sqrt(c) * std::tan(hfov / 2)));
    CHECK(std::tan(beta) == doctest::Approx(std::sqrt(c) * std::tan(vfov / 2)));
    double area = std::tan(alpha) * std::tan(beta) / (std::tan(hfov / 2) * std::tan(vfov / 2));
    CHECK(area == doctest::Approx(c).epsilon(1e-12));
  }
  CHECK_THROWS_AS(frame_angular_extents(0.0, hfov, vfov), std::invalid_argument);
  CHECK_THROWS_AS(frame_angular_extents(1.2, hfov, vfov), std::invalid_argument);
  CHECK_THROWS_AS(frame_angular_extents(0.3, kPi, vfov), std::invalid_argument);
}

TEST_CASE("cockpit config validation") {
  CockpitConfig c;
  CHECK_NOTHROW(validate_cockpit_config(c));
  CockpitConfig bad = c;
  bad.coverage = 0.0;
  CHECK_THROWS_AS(validate_cockpit_config(bad), std::invalid_argument);
  bad = c;
  bad.distance = -1.0;
  CHECK_THROWS_AS(validate_cockpit_config(bad), std::invalid_argument);
  bad = c;
  bad.capture_width = 64;  // height left 0
  CHECK_THROWS_AS(validate_cockpit_config(bad), std::invalid_argument);
  bad = c;
  bad.enabled = {false, false, false, false};
  CHECK_THROWS_AS(validate_cockpit_config(bad), std::invalid_argument);
}

TEST_CASE("rig capture grid is a centered window of the head grid") {
  CockpitConfig cfg;  // coverage 0.30
  Camera view = default_view();
  CockpitRig rig = make_cockpit_rig(cfg, view);
  REQUIRE(rig.panels.size() == 4);
  REQUIRE(rig.capture_cameras.size() == 4);
  for (const Camera& cap : rig.capture_cameras) {
    CHECK(cap.width == 176);
    CHECK(cap.height == 132);
    CHECK(cap.hfov == view.hfov);
    CHECK(cap.grid_width == 320);
    CHECK(cap.grid_height == 240);
    CHECK(cap.grid_x == 72);
    CHECK(cap.grid_y == 54);
    // Capture texel (i, j) must shoot exactly the head camera's ray through
    // pixel (i + 72, j + 54); that is what keeps an aligned panel lossless.
    Camera head = view;
    head.pose = cap.pose;
    Ray a = camera_ray(cap, 10, 20);
    Ray b = camera_ray(head, 82, 74);
    CHECK(a.direction == b.direction);
  }
  for (const PanelUv& uv : rig.uvs) {
    // The panel footprint is centered on the capture image.
    CHECK(uv.u0 + uv.du / 2 == doctest::Approx(176.0 / 2).epsilon(1e-12));
    CHECK(uv.v0 + uv.dv / 2 == doctest::Approx(132.0 / 2).epsilon(1e-12));
  }
}

TEST_CASE("disabling panels shrinks the rig") {
  CockpitConfig cfg;
  cfg.enabled = {true, false, false, true};
  CockpitRig rig = make_cockpit_rig(cfg, default_view());
  REQUIRE(rig.panels.size() == 2);
  CHECK(rig.panels[0].direction == PanelDirection::Front);
  CHECK(rig.panels[1].direction == PanelDirection::Right);
}

TEST_CASE("aligned panel occupies the configured viewport fraction") {
  CockpitConfig cfg;  // coverage 0.30
  Camera view = default_view();
  CockpitRig rig = make_cockpit_rig(cfg, view);
  Pose body{{12, -3, 1.5}, 0.4};
  for (int i = 0; i < 4; ++i) {
    auto dir = static_cast<PanelDirection>(i);
    Mask m = panel_region_mask(view, body, cardinal_yaw(dir), 0.0, rig, static_cast<size_t>(i));
    // 176 x 132 pixel-center rays land inside the quad at this resolution.
    CHECK(m.count() == 176u * 132u);
    CHECK(m.fraction() == doctest::Approx(0.30).epsilon(0.04));  // 0.3025
    CHECK(std::abs(m.fraction() - 0.30) < 0.01);
  }
}

TEST_CASE("at 90 degrees only the facing panel is in view") {
  CockpitConfig cfg;
  Camera view = default_view();
  CockpitRig rig = make_cockpit_rig(cfg, view);
  Pose body{{0, 0, 1.2}, 0.0};
  Mask all = frame_region_mask(view, body, 0.0, 0.0, rig);
  Mask front = panel_region_mask(view, body, 0.0, 0.0, rig, 0);
  CHECK(all == front);
  for (size_t i = 1; i < 4; ++i)
    CHECK(panel_region_mask(view, body, 0.0, 0.0, rig, i).count() == 0);
}

TEST_CASE("body-anchored panels ignore vehicle pitch and roll") {
  CockpitConfig cfg;
  Camera view = default_view();
  CockpitRig rig = make_cockpit_rig(cfg, view);
  Pose flat{{5, 5, 1.2}, 0.8, 0.0, 0.0};
  Pose tilted = flat;
  tilted.pitch = 0.2;
  tilted.roll = -0.15;
  CHECK(frame_region_mask(view, flat, 0.3, -0.1, rig) ==
        frame_region_mask(view, tilted, 0.3, -0.1, rig));

  Pose a1 = anchor_frame(rig, tilted, 0.5, 0.2);
  CHECK(a1.yaw == tilted.yaw);  // head offset ignored in body mode
  CHECK(a1.pitch == 0.0);
  CHECK(a1.roll == 0.0);

  CockpitConfig head_cfg = cfg;
  head_cfg.anchor = AnchorMode::Head;
  CockpitRig head_rig = make_cockpit_rig(head_cfg, view);
  Pose a2 = anchor_frame(head_rig, tilted, 0.5, 0.2);
  CHECK(a2.yaw == doctest::Approx(wrap_angle(tilted.yaw + 0.5)));
  CHECK(a2.pitch == 0.2);
}

TEST_CASE("head camera is yaw-plus-head only") {
  Camera view = default_view();
  Pose body{{1, 2, 3}, 0.6, 0.3, -0.2};  // vehicle pitched and rolled
  Camera cam = head_camera(view, body, 0.25, -0.1);
  CHECK(cam.pose.position == body.position);
  CHECK(cam.pose.yaw == doctest::Approx(0.85));
  CHECK(cam.pose.pitch == -0.1);
  CHECK(cam.pose.roll == 0.0);
}

TEST_CASE("compose adds one panel quad per enabled panel") {
  Scene scene = build_racing_scene(default_track_spec(), 1);
  CockpitConfig cfg;
  Camera view = default_view();
  CockpitRig rig = make_cockpit_rig(cfg, view);
  Pose body = racing_start_pose();
  ComposeResult r = compose(scene, body, 0.0, 0.0, rig, view);
  CHECK(r.captures.size() == 4);
  CHECK(r.panel_ids.size() == 4);
  CHECK(r.frame.width == view.width);
  // The aligned front panel sits dead ahead: the center pixel shows it.
  size_t center = r.frame.idx(view.width / 2, view.height / 2);
  CHECK(r.frame.entity_id[center] == r.panel_ids[0]);
  CHECK(r.frame.depth[center] == 1.0f);  // panel distance, exactly
}

TEST_CASE("capture_views rejects scenes that already hold panels") {
  Scene scene = build_racing_scene(default_track_spec(), 1);
  CockpitConfig cfg;
  Camera view = default_view();
  CockpitRig rig = make_cockpit_rig(cfg, view);
  Entity stray;
  stray.shape = Quad{{Vec3{1, 1, 1}, Vec3{1, -1, 1}, Vec3{1, -1, 0}, Vec3{1, 1, 0}}};
  stray.role = Role::CockpitPanel;
  scene.add(stray);
  CHECK_THROWS_AS(capture_views(scene, Pose{}, rig), std::invalid_argument);
}

TEST_CASE("aligned panel reproduces the plain view within one channel step") {
  Scene scene = build_racing_scene(default_track_spec(), 1);
  CockpitConfig cfg;
  Camera view = default_view();
  CockpitRig rig = make_cockpit_rig(cfg, view);
  Pose body = racing_start_pose();
  FidelityReport rep = fidelity_report(scene, body, 0.0, 0.0, rig, view);
  REQUIRE(rep.max_channel_dev.size() == 4);
  REQUIRE(rep.max_channel_dev[0].has_value());
  CHECK(*rep.max_channel_dev[0] <= 1);
  CHECK_FALSE(rep.max_channel_dev[1].has_value());  // back panel not in view
}

TEST_CASE("body-anchored captures ignore the head, view-locked ones do not") {
  Scene scene = build_racing_scene(default_track_spec(), 1);
  Pose body = racing_start_pose();
  std::vector<std::pair<double, double>> offsets = {
      {0.0, 0.0}, {0.3, 0.0}, {-0.4, 0.1}, {0.2, -0.2}, {-0.1, 0.15}};

  CockpitConfig cfg;
  Camera view = default_view();
  CockpitRig body_rig = make_cockpit_rig(cfg, view);
  auto body_sets = decoupling_report(scene, body, offsets, body_rig);
  REQUIRE(body_sets.size() == 4);
  for (const auto& hashes : body_sets) CHECK(hashes.size() == 1);

  cfg.anchor = AnchorMode::Head;
  CockpitRig head_rig = make_cockpit_rig(cfg, view);
  auto head_sets = decoupling_report(scene, body, offsets, head_rig);
  for (const auto& hashes : head_sets) CHECK(hashes.size() >= 2);
}
