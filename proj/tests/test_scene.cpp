#include "doctest.h"

#include <cmath>

#include "vrc/rng.hpp"
#include "vrc/scene.hpp"
#include "vrc/scene_build.hpp"

using namespace vrc;

namespace {

Entity sphere_at(Vec3 c, double r) {
  Entity e;
  e.shape = Sphere{c, r};
  return e;
}

// Nearest-hit oracle written as the plain definition: test every entity and
// keep the smallest t, later ids winning ties.
std::optional<Hit> brute_force(const Scene& s, const Vec3& o, const Vec3& d, double t_max) {
  std::optional<Hit> best;
  for (const Entity& e : s.entities) {
    if (!e.alive) continue;
    if (auto h = intersect_entity(e, o, d, t_max)) {
      if (!best || h->t < best->t || (h->t == best->t && h->entity_id > best->entity_id))
        best = *h;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("scene add assigns sequential ids") {
  Scene s;
  s.add(sphere_at({0, 0, 0}, 1));
  s.add(sphere_at({2, 0, 0}, 1));
  CHECK(s.entities[0].id == 1);
  CHECK(s.entities[1].id == 2);
  CHECK(s.find(1) == &s.entities[0]);
  CHECK(s.find(2) == &s.entities[1]);
  CHECK(s.find(0) == nullptr);
  CHECK(s.find(3) == nullptr);
}

TEST_CASE("scene validation") {
  Scene s;
  s.add(sphere_at({0, 0, 0}, 1));
  CHECK_NOTHROW(s.validate());

  Scene dup = s;
  dup.entities.push_back(dup.entities[0]);  // same id twice
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  Scene bad_r = s;
  std::get<Sphere>(bad_r.entities[0].shape).radius = 0.0;
  CHECK_THROWS_AS(bad_r.validate(), std::invalid_argument);

  Scene bad_box;
  Entity e;
  e.shape = Box{{1, 0, 0}, {0, 1, 1}};
  bad_box.add(e);
  CHECK_THROWS_AS(bad_box.validate(), std::invalid_argument);

  Scene bad_light = s;
  bad_light.light_dir = {1, 1, 0};
  CHECK_THROWS_AS(bad_light.validate(), std::invalid_argument);
}

TEST_CASE("sphere intersection") {
  Entity e = sphere_at({0, 0, 0}, 1.0);
  e.id = 1;
  auto h = intersect_entity(e, {-5, 0, 0}, {1, 0, 0}, 100);
  REQUIRE(h.has_value());
  CHECK(h->t == doctest::Approx(4.0));
  CHECK(h->normal.x == doctest::Approx(-1.0));
  CHECK(h->entity_id == 1);

  // From inside: the far surface, normal flipped toward the origin.
  auto inner = intersect_entity(e, {0, 0, 0}, {1, 0, 0}, 100);
  REQUIRE(inner.has_value());
  CHECK(inner->t == doctest::Approx(1.0));
  CHECK(inner->normal.x == doctest::Approx(-1.0));

  CHECK_FALSE(intersect_entity(e, {-5, 3, 0}, {1, 0, 0}, 100).has_value());
  CHECK_FALSE(intersect_entity(e, {-5, 0, 0}, {1, 0, 0}, 3.5).has_value());
}

TEST_CASE("box intersection") {
  Entity e;
  e.id = 2;
  e.shape = Box{{-1, -1, -1}, {1, 1, 1}};
  auto h = intersect_entity(e, {-4, 0.3, 0.2}, {1, 0, 0}, 100);
  REQUIRE(h.has_value());
  CHECK(h->t == doctest::Approx(3.0));
  CHECK(h->normal.x == doctest::Approx(-1.0));
  // No entry face from inside.
  CHECK_FALSE(intersect_entity(e, {0, 0, 0}, {1, 0, 0}, 100).has_value());
}

TEST_CASE("ground plane intersection") {
  Entity e;
  e.id = 3;
  e.shape = GroundPlane{0.5};
  auto h = intersect_entity(e, {0, 0, 2}, {0, 0, -1}, 100);
  REQUIRE(h.has_value());
  CHECK(h->t == doctest::Approx(1.5));
  CHECK(h->normal.z == doctest::Approx(1.0));
  CHECK_FALSE(intersect_entity(e, {0, 0, 2}, {1, 0, 0}, 100).has_value());
}

TEST_CASE("quad intersection fills rectangle parameters") {
  Entity e;
  e.id = 4;
  e.shape = Quad{{Vec3{2, 1, 1}, Vec3{2, -1, 1}, Vec3{2, -1, -1}, Vec3{2, 1, -1}}};
  auto h = intersect_entity(e, {0, 0.5, -0.5}, {1, 0, 0}, 100);
  REQUIRE(h.has_value());
  CHECK(h->t == doctest::Approx(2.0));
  CHECK(h->quad_s == doctest::Approx(0.25));  // y: 1 -> -1 maps s 0 -> 1
  CHECK(h->quad_t == doctest::Approx(0.75));  // z: 1 -> -1 maps t 0 -> 1
  CHECK_FALSE(intersect_entity(e, {0, 1.5, 0}, {1, 0, 0}, 100).has_value());
}

TEST_CASE("posed entity transforms the ray") {
  Entity e = sphere_at({0, 0, 0}, 1.0);
  e.id = 1;
  e.pose = Pose{{5, 2, 0}, 1.3};  // rotation is irrelevant for a centered sphere
  auto h = intersect_entity(e, {0, 2, 0}, {1, 0, 0}, 100);
  REQUIRE(h.has_value());
  CHECK(h->t == doctest::Approx(4.0));
  CHECK(h->point.x == doctest::Approx(4.0));

  Entity box;
  box.id = 2;
  box.shape = Box{{-1, -2, -1}, {1, 2, 1}};
  box.pose = Pose{{10, 0, 0}, kPi / 2};  // long axis now along world X
  CHECK(intersect_entity(box, {0, 0, 0}, {1, 0, 0}, 100).has_value());
  auto side = intersect_entity(box, {10, -5, 0}, {0, 1, 0}, 100);
  REQUIRE(side.has_value());
  CHECK(side->t == doctest::Approx(4.0));  // rotated box spans x in [8, 12], y in [-1, 1]
}

TEST_CASE("query_ray picks the nearest and skips dead entities") {
  Scene s;
  s.add(sphere_at({10, 0, 0}, 1));
  s.add(sphere_at({5, 0, 0}, 1));
  s.add(sphere_at({20, 0, 0}, 1));
  auto h = query_ray(s, {0, 0, 0}, {1, 0, 0}, 1e9);
  REQUIRE(h.has_value());
  CHECK(h->entity_id == 2);

  s.entities[1].alive = false;
  h = query_ray(s, {0, 0, 0}, {1, 0, 0}, 1e9);
  REQUIRE(h.has_value());
  CHECK(h->entity_id == 1);

  CHECK_FALSE(query_ray(s, {0, 0, 0}, {1, 0, 0}, 3.0).has_value());
  CHECK_THROWS_AS(query_ray(s, {0, 0, 0}, {1, 0, 0}, 0.0), std::invalid_argument);
  Vec3 nan{std::numeric_limits<double>::quiet_NaN(), 0, 0};
  CHECK_THROWS_AS(query_ray(s, nan, {1, 0, 0}, 1.0), std::invalid_argument);
}

TEST_CASE("equal-distance ties go to the higher id") {
  Scene s;
  Entity q;
  q.shape = Quad{{Vec3{3, 1, 1}, Vec3{3, -1, 1}, Vec3{3, -1, -1}, Vec3{3, 1, -1}}};
  s.add(q);
  s.add(q);  // coincident copy, higher id
  auto lin = query_ray(s, {0, 0, 0}, {1, 0, 0}, 1e9);
  REQUIRE(lin.has_value());
  CHECK(lin->entity_id == 2);
  SceneIndex idx = build_scene_index(s);
  auto acc = query_ray(idx, {0, 0, 0}, {1, 0, 0}, 1e9);
  REQUIRE(acc.has_value());
  CHECK(acc->entity_id == 2);
}

TEST_CASE("indexed queries match the linear scan on built scenes") {
  Scene racing = build_racing_scene(default_track_spec(), 7);
  Scene fps = build_fps_scene(default_arena_spec(), 9);
  // Kill a couple of entities so the index build sees dead ones too.
  fps.entities[4].alive = false;
  racing.entities[3].alive = false;

  DetRng rng(41);
  for (const Scene* scene : {&racing, &fps}) {
    SceneIndex idx = build_scene_index(*scene);
    int hits = 0;
    for (int k = 0; k < 4000; ++k) {
      Vec3 o{rng.next_range(-60, 320), rng.next_range(-80, 80), rng.next_range(0.2, 6)};
      Vec3 d = normalized(Vec3{rng.next_range(-1, 1), rng.next_range(-1, 1),
                               rng.next_range(-0.6, 0.6)} +
                          Vec3{1e-9, 0, 0});
      double t_max = rng.next_unit() < 0.2 ? rng.next_range(1, 40) : 1e9;
      auto a = query_ray(*scene, o, d, t_max);
      auto b = query_ray(idx, o, d, t_max);
      REQUIRE(a.has_value() == b.has_value());
      if (a) {
        ++hits;
        CHECK(a->entity_id == b->entity_id);
        CHECK(a->t == b->t);  // exact: both paths run the same primitive code
        CHECK(a->point == b->point);
        CHECK(a->normal == b->normal);
      }
    }
    CHECK(hits > 500);  // the sample actually exercised the tree
  }
}

TEST_CASE("indexed queries match brute force on a random soup") {
  Scene s;
  DetRng rng(4242);
  for (int i = 0; i < 120; ++i) {
    Entity e;
    double pick = rng.next_unit();
    if (pick < 0.4) {
      e.shape = Sphere{{0, 0, 0}, rng.next_range(0.2, 2.0)};
    } else if (pick < 0.7) {
      e.shape = Box{{-1, -0.5, -0.8}, {1, 0.5, 0.8}};
    } else {
      e.shape = Quad{{Vec3{0, 1, 1}, Vec3{0, -1, 1}, Vec3{0, -1, -1}, Vec3{0, 1, -1}}};
    }
    e.pose = Pose{{rng.next_range(-20, 20), rng.next_range(-20, 20), rng.next_range(-5, 5)},
                  rng.next_range(-3, 3), rng.next_range(-1.2, 1.2), rng.next_range(-3, 3)};
    if (rng.next_unit() < 0.1) e.alive = false;
    s.add(e);
  }
  s.add([] {
    Entity g;
    g.shape = GroundPlane{-6.0};
    return g;
  }());

  SceneIndex idx = build_scene_index(s);
  DetRng rays(99);
  for (int k = 0; k < 3000; ++k) {
    Vec3 o{rays.next_range(-25, 25), rays.next_range(-25, 25), rays.next_range(-8, 8)};
    Vec3 d = normalized(Vec3{rays.next_range(-1, 1), rays.next_range(-1, 1),
                             rays.next_range(-1, 1)} +
                        Vec3{0, 0, 1e-9});
    auto want = brute_force(s, o, d, 1e9);
    auto got = query_ray(idx, o, d, 1e9);
    REQUIRE(want.has_value() == got.has_value());
    if (want) {
      CHECK(want->entity_id == got->entity_id);
      CHECK(want->t == got->t);
    }
  }
}

TEST_CASE("index handles degenerate scenes") {
  Scene empty;
  SceneIndex idx = build_scene_index(empty);
  CHECK_FALSE(query_ray(idx, {0, 0, 0}, {1, 0, 0}, 1e9).has_value());

  Scene only_ground;
  Entity g;
  g.shape = GroundPlane{0.0};
  only_ground.add(g);
  SceneIndex gi = build_scene_index(only_ground);
  CHECK(gi.nodes.empty());
  auto h = query_ray(gi, {0, 0, 5}, {0, 0, -1}, 1e9);
  REQUIRE(h.has_value());
  CHECK(h->t == doctest::Approx(5.0));

  SceneIndex unbuilt;
  CHECK_THROWS_AS(query_ray(unbuilt, {0, 0, 0}, {1, 0, 0}, 1.0), std::invalid_argument);
}

TEST_CASE("scene builds are deterministic") {
  Scene a = build_racing_scene(default_track_spec(), 12);
  Scene b = build_racing_scene(default_track_spec(), 12);
  CHECK(a == b);
  Scene c = build_racing_scene(default_track_spec(), 13);
  CHECK_FALSE(a == c);  // decor placement is seeded
}
