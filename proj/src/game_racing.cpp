#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vrc/games.hpp"

namespace vrc {

RacingSim::RacingSim(const TrackSpec& spec, const Scene& scene, RacingParams params)
    : frame_(spec), params_(params), laps_(spec.laps) {
  coin_ids_ = entity_ids_with_role(scene, Role::Coin);
  barrier_ids_ = entity_ids_with_role(scene, Role::Barrier);
  if (coin_ids_.size() != spec.coins.size() || barrier_ids_.size() != spec.barriers.size())
    throw std::invalid_argument("scene does not match the track spec");
  for (int32_t id : coin_ids_) {
    const Entity* e = scene.find(id);
    coin_centers_.push_back(std::get<Sphere>(e->shape).center);
  }
  state_.coin_alive.assign(coin_ids_.size(), 1);
  state_.barrier_contact.assign(barrier_ids_.size(), 0);
  respawn();
}

void RacingSim::respawn() {
  Vec3 p = frame_.position(state_.progress);
  state_.body.position = {p.x, p.y, p.z + kTrackLift + kVehicleEyeHeight};
  state_.body.yaw = frame_.heading(state_.progress);
  state_.body.pitch = frame_.pitch_angle(state_.progress);
  state_.body.roll = 0.0;
  state_.speed = 0.0;
  state_.prev_heading_err = 0.0;
}

void RacingSim::step(Scene& scene, DetRng& rng, double dt) {
  if (state_.finished) return;
  state_.tick += 1;
  state_.elapsed = state_.tick * dt;

  if (state_.pause_ticks > 0) {
    state_.pause_ticks -= 1;
    if (state_.pause_ticks == 0) respawn();
    return;
  }

  if (state_.tick % params_.jitter_every_ticks == 0)
    state_.jitter_target = (2.0 * rng.next_unit() - 1.0) * params_.jitter_lateral;

  // Steer toward a look-ahead point near the centerline.
  double look = params_.lookahead_base + params_.lookahead_per_speed * state_.speed;
  double look_s = state_.progress + look;
  Vec3 target = frame_.position(look_s) + frame_.lateral(look_s) * state_.jitter_target;
  double desired = std::atan2(target.y - state_.body.position.y,
                              target.x - state_.body.position.x);
  double err = wrap_angle(desired - state_.body.yaw);
  double derr = (err - state_.prev_heading_err) / dt;
  state_.prev_heading_err = err;
  double yaw_rate = std::clamp(params_.steer_kp * err + params_.steer_kd * derr,
                               -params_.max_yaw_rate, params_.max_yaw_rate);
  state_.body.yaw = wrap_angle(state_.body.yaw + yaw_rate * dt);

  // Throttle toward the cornering speed profile.
  double window = 60.0 + 2.0 * state_.speed;
  double kappa = frame_.max_curvature(state_.progress, window);
  double v_corner = kappa > 1e-9 ? std::sqrt(params_.corner_lat_accel / kappa)
                                 : params_.v_max;
  double v_target = std::min(params_.v_max, v_corner);
  double dv = std::clamp((v_target - state_.speed) / dt, -params_.brake, params_.accel) * dt;
  state_.speed = std::clamp(state_.speed + dv, 0.0, params_.v_max);

  state_.body.position.x += state_.speed * dt * std::cos(state_.body.yaw);
  state_.body.position.y += state_.speed * dt * std::sin(state_.body.yaw);
  state_.distance += state_.speed * dt;

  double prev_s = state_.progress;
  double s = frame_.project(state_.body.position, prev_s);
  double total = frame_.length();
  state_.progress = s;
  Vec3 on_track = frame_.position(s);
  state_.body.position.z = on_track.z + kTrackLift + kVehicleEyeHeight;
  state_.body.pitch = frame_.pitch_angle(s);

  // Lap boundary: progress wrapped from the top of the lap back to the start.
  if (prev_s > 0.5 * total && s < prev_s - 0.5 * total) {
    state_.lap += 1;
    for (size_t i = 0; i < coin_ids_.size(); ++i) {
      state_.coin_alive[i] = 1;
      scene.find(coin_ids_[i])->alive = true;
    }
    if (state_.lap >= laps_) {
      state_.finished = true;
      return;
    }
  }

  for (size_t i = 0; i < coin_ids_.size(); ++i) {
    if (!state_.coin_alive[i]) continue;
    if (norm(state_.body.position - coin_centers_[i]) <= params_.coin_radius) {
      state_.coin_alive[i] = 0;
      scene.find(coin_ids_[i])->alive = false;
      state_.coins += 1;
    }
  }

  bool crashed = false;
  for (size_t i = 0; i < barrier_ids_.size(); ++i) {
    const Entity* b = scene.find(barrier_ids_[i]);
    const Box& box = std::get<Box>(b->shape);
    Vec3 local = b->pose.to_local(state_.body.position);
    double m = params_.collision_margin;
    bool contact = local.x >= box.min.x - m && local.x <= box.max.x + m &&
                   local.y >= box.min.y - m && local.y <= box.max.y + m &&
                   std::abs(state_.body.position.z - b->pose.position.z) < 3.0;
    if (contact && !state_.barrier_contact[i] && !crashed) {
      crashed = true;
      state_.crashes += 1;
      state_.speed = 0.0;
      state_.pause_ticks = static_cast<int>(std::lround(params_.crash_pause_s / dt));
    }
    state_.barrier_contact[i] = contact ? 1 : 0;
  }
}

}  // namespace vrc
