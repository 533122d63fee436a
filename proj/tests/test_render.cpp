#include "doctest.h"

#include <cmath>

#include "vrc/parallel.hpp"
#include "vrc/render.hpp"
#include "vrc/scene_build.hpp"

using namespace vrc;

namespace {

Scene wall_scene(double x) {
  Scene s;
  Entity e;
  e.shape = Quad{{Vec3{x, 40, 30}, Vec3{x, -40, 30}, Vec3{x, -40, -30}, Vec3{x, 40, -30}}};
  e.albedo = {0.8, 0.2, 0.2};
  s.add(e);
  return s;
}

struct ThreadGuard {
  ~ThreadGuard() { set_thread_count(0); }
};

}  // namespace

TEST_CASE("parallel render is bit-identical to the serial reference") {
  ThreadGuard guard;
  Scene scene = build_racing_scene(default_track_spec(), 3);
  Camera cam;
  cam.width = 160;
  cam.height = 120;
  cam.pose = Pose{{300, 0, 1.4}, 0.15, -0.02, 0.0};

  RenderPrev prev = snapshot_prev(cam, scene);
  prev.camera_pose.position.y += 0.05;  // exercise the motion path too

  FrameBundle ref = render_reference(scene, cam, &prev);
  for (int threads : {1, 2, 3}) {
    set_thread_count(threads);
    FrameBundle par = render(scene, cam, &prev);
    CHECK(par == ref);
  }
}

TEST_CASE("miss pixels carry background, infinite depth, id zero") {
  Scene s;  // empty
  Camera cam;
  cam.width = 8;
  cam.height = 8;
  FrameBundle f = render(s, cam);
  for (int y = 0; y < cam.height; ++y)
    for (int x = 0; x < cam.width; ++x) {
      size_t i = f.idx(x, y);
      CHECK(std::isinf(f.depth[i]));
      CHECK(f.entity_id[i] == 0);
      const uint8_t* rgb = f.color.px(x, y);
      CHECK(rgb[0] == quantize_channel(s.background.x));
      CHECK(rgb[1] == quantize_channel(s.background.y));
      CHECK(rgb[2] == quantize_channel(s.background.z));
    }
}

TEST_CASE("depth is the z-depth along the camera forward axis") {
  // A frontal wall at x = d must come back as depth d for every pixel even
  // though the ray length grows toward the frame edges.
  Scene s = wall_scene(2.5);
  Camera cam;
  cam.width = 64;
  cam.height = 48;
  FrameBundle f = render(s, cam);
  for (size_t i = 0; i < f.depth.size(); ++i) {
    CHECK(f.entity_id[i] == 1);
    CHECK(f.depth[i] == 2.5f);
  }
}

TEST_CASE("motion field matches the analytic lateral-shift value") {
  // Camera previously 0.1 m to the left (+Y): every point of a frontal wall
  // at x = 5 moves du = -(w/2) * dy / (x * tan(hfov/2)) = -3.2 px, dv = 0.
  Scene s = wall_scene(5.0);
  Camera cam;
  cam.width = 320;
  cam.height = 240;
  RenderPrev prev = snapshot_prev(cam, s);
  prev.camera_pose.position.y = 0.1;
  FrameBundle f = render(s, cam, &prev);
  for (int y = 40; y < 200; y += 23)
    for (int x = 30; x < 290; x += 17) {
      size_t i = f.idx(x, y);
      REQUIRE(f.entity_id[i] == 1);
      CHECK(f.motion[2 * i] == doctest::Approx(-3.2).epsilon(1e-6));
      CHECK(f.motion[2 * i + 1] == doctest::Approx(0.0).epsilon(1e-6));
    }
}

TEST_CASE("moving the entity instead of the camera flips the motion sign") {
  Scene s = wall_scene(5.0);
  Camera cam;
  cam.width = 64;
  cam.height = 48;
  RenderPrev prev = snapshot_prev(cam, s);
  prev.entity_poses[0] = Pose{{0, -0.1, 0}, 0.0};  // wall was 0.1 m to the right
  FrameBundle f = render(s, cam, &prev);
  size_t i = f.idx(32, 24);
  CHECK(f.motion[2 * i] < -0.1);  // content moved leftward in the image
}

TEST_CASE("render validates the prev snapshot size") {
  Scene s = wall_scene(3.0);
  Camera cam;
  cam.width = 4;
  cam.height = 4;
  RenderPrev prev;  // empty pose list
  CHECK_THROWS_AS(render(s, cam, &prev), std::invalid_argument);
}

TEST_CASE("checker albedo blends between the two colors") {
  Entity e;
  e.albedo = {1, 0, 0};
  e.checker_albedo = {0, 1, 0};
  SUBCASE("disabled checker returns the base albedo") {
    e.checker_cell = 0.0;
    Vec3 c = surface_albedo(e, {17.3, -4.1, 0});
    CHECK(c.x == 1.0);
  }
  SUBCASE("cell centers alternate") {
    e.checker_cell = 1.0;
    e.checker_softness = 0.05;
    Vec3 a = surface_albedo(e, {0.0, 0.0, 0});   // even cell
    Vec3 b = surface_albedo(e, {1.0, 0.0, 0});   // odd cell
    CHECK(a.x == doctest::Approx(1.0));
    CHECK(b.y == doctest::Approx(1.0));
  }
}

TEST_CASE("quantize_channel rounds and clamps") {
  CHECK(quantize_channel(0.0) == 0);
  CHECK(quantize_channel(1.0) == 255);
  CHECK(quantize_channel(-0.3) == 0);
  CHECK(quantize_channel(2.0) == 255);
  CHECK(quantize_channel(0.5) == 128);
  CHECK(quantize_channel(127.4 / 255.0) == 127);
}
