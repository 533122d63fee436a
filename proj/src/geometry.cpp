#include "vrc/geometry.hpp"

namespace vrc {

Mat3 rot_yaw(double yaw) {
  double c = std::cos(yaw), s = std::sin(yaw);
  Mat3 r;
  r.m = {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
  return r;
}

Mat3 rot_pitch(double pitch) {
  // Implemented as rotation about -Y so that positive pitch raises the nose.
  double c = std::cos(pitch), s = std::sin(pitch);
  Mat3 r;
  r.m = {{{c, 0, -s}, {0, 1, 0}, {s, 0, c}}};
  return r;
}

Mat3 rot_roll(double roll) {
  double c = std::cos(roll), s = std::sin(roll);
  Mat3 r;
  r.m = {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
  return r;
}

void validate_pose(const Pose& p) {
  if (!is_finite(p.position) || !std::isfinite(p.yaw) || !std::isfinite(p.pitch) ||
      !std::isfinite(p.roll)) {
    throw std::invalid_argument("pose has non-finite components");
  }
}

Pose pose_from_matrix(const Mat3& r, const Vec3& position) {
  double sp = r.m[2][0];
  if (sp > 1.0) sp = 1.0;
  if (sp < -1.0) sp = -1.0;
  Pose p;
  p.position = position;
  p.pitch = std::asin(sp);
  p.yaw = std::atan2(r.m[1][0], r.m[0][0]);
  Mat3 yp_t = (rot_yaw(p.yaw) * rot_pitch(p.pitch)).transposed();
  Vec3 left = yp_t * Vec3{r.m[0][1], r.m[1][1], r.m[2][1]};
  p.roll = std::atan2(left.z, left.y);
  return p;
}

Pose compose_pose(const Pose& outer, const Pose& inner) {
  Vec3 pos = outer.to_world(inner.position);
  if (outer.pitch == 0.0 && outer.roll == 0.0 && inner.pitch == 0.0 && inner.roll == 0.0) {
    return Pose{pos, wrap_angle(outer.yaw + inner.yaw), 0.0, 0.0};
  }
  return pose_from_matrix(outer.rotation() * inner.rotation(), pos);
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a > kPi) a -= 2.0 * kPi;
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace vrc
