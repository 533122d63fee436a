#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace vrc {

// World convention: right-handed, +X forward, +Y left, +Z up, meters.

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double norm2(const Vec3& v) { return dot(v, v); }
inline Vec3 normalized(const Vec3& v) {
  double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return v / n;
}
inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Column-major-free tiny 3x3 matrix, row-indexed.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  static Mat3 identity() { return {}; }

  Vec3 operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }
  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }
};

// Rotation about +Z; positive yaw turns +X toward +Y (leftward).
Mat3 rot_yaw(double yaw);
// Positive pitch tilts the forward axis upward (+Z).
Mat3 rot_pitch(double pitch);
// Rotation about +X; positive roll tilts +Y toward +Z.
Mat3 rot_roll(double roll);

// Rigid pose: position plus yaw/pitch/roll applied in that order.
struct Pose {
  Vec3 position;
  double yaw = 0.0, pitch = 0.0, roll = 0.0;

  Pose() = default;
  Pose(Vec3 p, double y, double pi = 0.0, double r = 0.0)
      : position(p), yaw(y), pitch(pi), roll(r) {}

  Mat3 rotation() const { return rot_yaw(yaw) * rot_pitch(pitch) * rot_roll(roll); }

  Vec3 to_world(const Vec3& local) const { return rotation() * local + position; }
  Vec3 to_local(const Vec3& world) const { return rotation().transposed() * (world - position); }
  Vec3 dir_to_world(const Vec3& local_dir) const { return rotation() * local_dir; }
  Vec3 dir_to_local(const Vec3& world_dir) const { return rotation().transposed() * world_dir; }

  Vec3 forward() const { return rotation() * Vec3{1, 0, 0}; }
  bool is_identity() const {
    return position == Vec3{} && yaw == 0.0 && pitch == 0.0 && roll == 0.0;
  }
  bool operator==(const Pose& o) const {
    return position == o.position && yaw == o.yaw && pitch == o.pitch && roll == o.roll;
  }
};

void validate_pose(const Pose& p);

// Recover yaw/pitch/roll from a rotation matrix. At pitch = +-pi/2 the
// yaw/roll split is degenerate; roll is forced to describe the remainder.
Pose pose_from_matrix(const Mat3& r, const Vec3& position);

// outer * inner as rigid transforms. Yaw-only pairs compose exactly by
// angle addition; the general case goes through matrix extraction.
Pose compose_pose(const Pose& outer, const Pose& inner);

// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

constexpr double kPi = 3.14159265358979323846;
inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

}  // namespace vrc
