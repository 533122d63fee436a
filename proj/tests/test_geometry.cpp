#include "doctest.h"

#include <cmath>

#include "vrc/geometry.hpp"
#include "vrc/rng.hpp"

using namespace vrc;

namespace {

bool close(const Vec3& a, const Vec3& b, double tol = 1e-12) {
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol && std::abs(a.z - b.z) <= tol;
}

double mat_dist(const Mat3& a, const Mat3& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(a.m[i][j] - b.m[i][j]));
  return d;
}

}  // namespace

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(2.0 * kPi) == doctest::Approx(0.0));
  CHECK(wrap_angle(-0.25) == doctest::Approx(-0.25));
  CHECK(wrap_angle(kPi + 0.1) == doctest::Approx(-kPi + 0.1));
  for (double a = -20.0; a <= 20.0; a += 0.37) {
    double w = wrap_angle(a);
    CHECK(w > -kPi - 1e-12);
    CHECK(w <= kPi + 1e-12);
    CHECK(std::abs(std::sin(w) - std::sin(a)) < 1e-9);
    CHECK(std::abs(std::cos(w) - std::cos(a)) < 1e-9);
  }
}

TEST_CASE("rotation axis conventions") {
  // +yaw turns forward (+X) leftward (+Y).
  CHECK(close(rot_yaw(kPi / 2) * Vec3{1, 0, 0}, {0, 1, 0}));
  // +pitch tilts forward upward (+Z).
  Vec3 f = rot_pitch(deg_to_rad(30)) * Vec3{1, 0, 0};
  CHECK(f.z == doctest::Approx(std::sin(deg_to_rad(30))));
  CHECK(f.x == doctest::Approx(std::cos(deg_to_rad(30))));
  CHECK(f.y == doctest::Approx(0.0));
  // +roll tilts left (+Y) toward up (+Z).
  Vec3 l = rot_roll(deg_to_rad(30)) * Vec3{0, 1, 0};
  CHECK(l.z == doctest::Approx(std::sin(deg_to_rad(30))));
  CHECK(l.y == doctest::Approx(std::cos(deg_to_rad(30))));
}

TEST_CASE("rotation matrices are orthonormal") {
  DetRng rng(11);
  for (int k = 0; k < 50; ++k) {
    Pose p({0, 0, 0}, rng.next_range(-3, 3), rng.next_range(-1.4, 1.4), rng.next_range(-3, 3));
    Mat3 r = p.rotation();
    CHECK(mat_dist(r * r.transposed(), Mat3::identity()) < 1e-12);
    Vec3 v{rng.next_range(-5, 5), rng.next_range(-5, 5), rng.next_range(-5, 5)};
    CHECK(norm(r * v) == doctest::Approx(norm(v)).epsilon(1e-12));
  }
}

TEST_CASE("pose world/local round trip") {
  DetRng rng(7);
  for (int k = 0; k < 100; ++k) {
    Pose p({rng.next_range(-50, 50), rng.next_range(-50, 50), rng.next_range(-5, 5)},
           rng.next_range(-3, 3), rng.next_range(-1.4, 1.4), rng.next_range(-3, 3));
    Vec3 v{rng.next_range(-20, 20), rng.next_range(-20, 20), rng.next_range(-20, 20)};
    CHECK(close(p.to_local(p.to_world(v)), v, 1e-9));
    CHECK(close(p.dir_to_local(p.dir_to_world(v)), v, 1e-9));
  }
}

TEST_CASE("pose_from_matrix recovers the rotation") {
  DetRng rng(3);
  for (int k = 0; k < 100; ++k) {
    Pose p({1, 2, 3}, rng.next_range(-3.1, 3.1), rng.next_range(-1.5, 1.5),
           rng.next_range(-3.1, 3.1));
    Pose q = pose_from_matrix(p.rotation(), p.position);
    CHECK(mat_dist(q.rotation(), p.rotation()) < 1e-9);
    CHECK(close(q.position, p.position));
  }
}

TEST_CASE("compose_pose matches transform composition") {
  DetRng rng(5);
  for (int k = 0; k < 60; ++k) {
    Pose outer({rng.next_range(-10, 10), rng.next_range(-10, 10), rng.next_range(-2, 2)},
               rng.next_range(-3, 3), rng.next_range(-1.2, 1.2), rng.next_range(-3, 3));
    Pose inner({rng.next_range(-4, 4), rng.next_range(-4, 4), rng.next_range(-1, 1)},
               rng.next_range(-3, 3), rng.next_range(-1.2, 1.2), rng.next_range(-3, 3));
    Pose c = compose_pose(outer, inner);
    Vec3 v{rng.next_range(-5, 5), rng.next_range(-5, 5), rng.next_range(-5, 5)};
    CHECK(close(c.to_world(v), outer.to_world(inner.to_world(v)), 1e-8));
  }
}

TEST_CASE("compose_pose yaw-only pairs are exact") {
  Pose outer({4, -2, 1}, 0.7);
  Pose inner({0.5, 0, 0}, -1.1);
  Pose c = compose_pose(outer, inner);
  CHECK(c.yaw == wrap_angle(0.7 - 1.1));
  CHECK(c.pitch == 0.0);
  CHECK(c.roll == 0.0);
}

TEST_CASE("validate_pose rejects non-finite fields") {
  Pose ok({1, 2, 3}, 0.1, 0.2, 0.3);
  CHECK_NOTHROW(validate_pose(ok));
  Pose bad = ok;
  bad.position.y = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_pose(bad), std::invalid_argument);
  bad = ok;
  bad.yaw = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_pose(bad), std::invalid_argument);
}

TEST_CASE("angle unit helpers") {
  CHECK(deg_to_rad(180.0) == doctest::Approx(kPi));
  CHECK(rad_to_deg(kPi / 2) == doctest::Approx(90.0));
  CHECK(rad_to_deg(deg_to_rad(33.5)) == doctest::Approx(33.5).epsilon(1e-14));
}

TEST_CASE("vector helpers") {
  CHECK(dot(Vec3{1, 2, 3}, Vec3{4, 5, 6}) == 32.0);
  CHECK(close(cross(Vec3{1, 0, 0}, Vec3{0, 1, 0}), {0, 0, 1}));
  CHECK(norm(Vec3{3, 4, 0}) == 5.0);
  CHECK_THROWS_AS(normalized(Vec3{0, 0, 0}), std::invalid_argument);
  CHECK_FALSE(is_finite(Vec3{0, std::numeric_limits<double>::quiet_NaN(), 0}));
}
