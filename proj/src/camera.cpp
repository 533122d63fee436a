#include "vrc/camera.hpp"

#include <stdexcept>
#include <string>

namespace vrc {

void validate_camera(const Camera& c) {
  validate_pose(c.pose);
  if (!(c.hfov > 0.0 && c.hfov < kPi))
    throw std::invalid_argument("camera hfov must be in (0, pi)");
  if (c.width < 8 || c.height < 8)
    throw std::invalid_argument("camera resolution must be at least 8x8");
  if (c.grid_width != 0 || c.grid_height != 0 || c.grid_x != 0 || c.grid_y != 0) {
    if (c.grid_width < c.width || c.grid_height < c.height || c.grid_x < 0 || c.grid_y < 0 ||
        c.grid_x + c.width > c.grid_width || c.grid_y + c.height > c.grid_height)
      throw std::invalid_argument("camera window must lie inside its pixel grid");
  }
}

Ray camera_ray_at(const Camera& cam, double u, double v) {
  double xi = (2.0 * (u + cam.grid_x) / cam.ref_w() - 1.0) * cam.half_tan_w();
  double eta = (2.0 * (v + cam.grid_y) / cam.ref_h() - 1.0) * cam.half_tan_h();
  Vec3 dir_cam{1.0, -xi, -eta};
  return Ray{cam.pose.position, cam.pose.dir_to_world(normalized(dir_cam))};
}

Ray camera_ray(const Camera& cam, int px, int py) {
  if (px < 0 || px >= cam.width || py < 0 || py >= cam.height)
    throw std::out_of_range("camera_ray: pixel (" + std::to_string(px) + ", " +
                            std::to_string(py) + ") outside " + std::to_string(cam.width) + "x" +
                            std::to_string(cam.height));
  return camera_ray_at(cam, px + 0.5, py + 0.5);
}

std::optional<std::pair<double, double>> project(const Camera& cam, const Vec3& point) {
  Vec3 p = cam.pose.to_local(point);
  if (p.x <= 1e-12) return std::nullopt;
  double xi = -p.y / p.x;
  double eta = -p.z / p.x;
  double u = (xi / cam.half_tan_w() + 1.0) * 0.5 * cam.ref_w() - cam.grid_x;
  double v = (eta / cam.half_tan_h() + 1.0) * 0.5 * cam.ref_h() - cam.grid_y;
  return std::make_pair(u, v);
}

}  // namespace vrc
