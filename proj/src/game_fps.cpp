#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vrc/games.hpp"

namespace vrc {

namespace {

Vec3 robot_head_center(const Vec3& position) {
  return {position.x, position.y, position.z + kRobotHeadHeight};
}

}  // namespace

FpsSim::FpsSim(const ArenaSpec& spec, const Scene& scene, FpsParams params)
    : params_(params) {
  patrol_.assign(spec.patrol.begin(), spec.patrol.end() - 1);
  detection_radius_ = spec.detection_radius;
  torso_ids_ = entity_ids_with_role(scene, Role::Robot);
  if (torso_ids_.size() != spec.robot_spawns.size())
    throw std::invalid_argument("scene does not match the arena spec");
  for (int32_t id : torso_ids_) {
    // The head sphere is added immediately after its torso.
    const Entity* head = scene.find(id + 1);
    if (!head || head->role != Role::Decor)
      throw std::invalid_argument("robot torso is missing its head entity");
    head_ids_.push_back(id + 1);
  }
  for (const auto& spawn : spec.robot_spawns) {
    RobotState r;
    r.position = spawn.position;
    r.yaw = spawn.yaw;
    state_.robots.push_back(r);
  }
  state_.magazine = params_.magazine_size;
  state_.body.position = patrol_.front();
  Vec3 to_next = patrol_[1] - patrol_[0];
  state_.body.yaw = std::atan2(to_next.y, to_next.x);
  state_.waypoint = 1;
}

bool FpsSim::player_sees(const Scene& scene, const Vec3& eye, size_t robot) const {
  Vec3 target = robot_head_center(state_.robots[robot].position);
  Vec3 d = target - eye;
  double dist = norm(d);
  if (dist < 1e-6) return true;
  Vec3 dir = d / dist;
  auto hit = query_ray(scene, eye, dir, dist + 0.6);
  return hit && (hit->entity_id == torso_ids_[robot] || hit->entity_id == head_ids_[robot]);
}

bool FpsSim::robot_sees_player(const Scene& scene, size_t robot, const Vec3& eye) const {
  Vec3 origin = robot_head_center(state_.robots[robot].position);
  Vec3 d = eye - origin;
  double dist = norm(d);
  if (dist < 1e-6) return true;
  Vec3 dir = d / dist;
  // Start past the robot's own head; the player has no entity, so a clear
  // line is a miss.
  double start = 0.55;
  if (dist <= start) return true;
  auto hit = query_ray(scene, origin + dir * start, dir, dist - start);
  return !hit.has_value();
}

void FpsSim::sync_robot_entities(Scene& scene, size_t robot) {
  const RobotState& r = state_.robots[robot];
  Pose pose{r.position, r.yaw};
  Entity* torso = scene.find(torso_ids_[robot]);
  Entity* head = scene.find(head_ids_[robot]);
  torso->pose = pose;
  head->pose = pose;
  torso->alive = r.alive;
  head->alive = r.alive;
}

void FpsSim::step(Scene& scene, DetRng& rng, double dt) {
  if (state_.finished) return;
  state_.tick += 1;
  state_.elapsed = state_.tick * dt;

  if (state_.reload_remaining > 0) {
    state_.reload_remaining -= 1;
    if (state_.reload_remaining == 0) state_.magazine = params_.magazine_size;
  }
  if (state_.fire_cooldown > 0) state_.fire_cooldown -= 1;
  for (auto& r : state_.robots)
    if (r.fire_cooldown > 0) r.fire_cooldown -= 1;

  Vec3 eye = state_.body.position + Vec3{0.0, 0.0, kPlayerEyeHeight};

  // Nearest alive robot that is visible and in range.
  int target = -1;
  double best = params_.engage_range;
  for (size_t i = 0; i < state_.robots.size(); ++i) {
    if (!state_.robots[i].alive) continue;
    double dist = norm(state_.robots[i].position - state_.body.position);
    if (dist <= best && player_sees(scene, eye, i)) {
      best = dist;
      target = static_cast<int>(i);
    }
  }

  if (target < 0) {
    // Patrol.
    Vec3 wp = patrol_[state_.waypoint];
    Vec3 d = wp - state_.body.position;
    double dist = norm(d);
    double step_len = params_.walk_speed * dt;
    double desired = state_.body.yaw;
    if (dist > 1e-9) desired = std::atan2(d.y, d.x);
    double turn = wrap_angle(desired - state_.body.yaw);
    double max_turn = params_.body_turn_rate * dt;
    state_.body.yaw = wrap_angle(state_.body.yaw + std::clamp(turn, -max_turn, max_turn));
    if (dist <= step_len) {
      state_.body.position = wp;
      state_.distance += dist;
      state_.waypoint = (state_.waypoint + 1) % patrol_.size();
    } else {
      state_.body.position += (d / dist) * step_len;
      state_.distance += step_len;
    }
    double back = params_.head_return_rate * dt;
    if (state_.head_yaw > back) state_.head_yaw -= back;
    else if (state_.head_yaw < -back) state_.head_yaw += back;
    else state_.head_yaw = 0.0;
  } else {
    // Stand and shoot.
    const RobotState& r = state_.robots[static_cast<size_t>(target)];
    double aim = std::atan2(r.position.y - state_.body.position.y,
                            r.position.x - state_.body.position.x);
    state_.head_yaw = std::clamp(wrap_angle(aim - state_.body.yaw), -params_.max_head_yaw,
                                 params_.max_head_yaw);
    if (state_.magazine > 0 && state_.fire_cooldown == 0 && state_.reload_remaining == 0) {
      state_.magazine -= 1;
      state_.fire_cooldown = params_.player_fire_ticks;
      state_.shots_fired += 1;
      RobotState& rt = state_.robots[static_cast<size_t>(target)];
      if (rng.next_unit() < params_.player_hit_prob) {
        rt.hits += 1;
        if (rt.hits >= params_.robot_hp) {
          rt.alive = false;
          sync_robot_entities(scene, static_cast<size_t>(target));
        }
      }
      if (state_.magazine == 0) state_.reload_remaining = params_.reload_ticks;
    }
  }

  for (size_t i = 0; i < state_.robots.size(); ++i) {
    RobotState& r = state_.robots[i];
    if (!r.alive) continue;
    Vec3 d = state_.body.position - r.position;
    double dist = norm(d);
    if (dist > detection_radius_) continue;
    if (!robot_sees_player(scene, i, eye)) continue;
    r.yaw = std::atan2(d.y, d.x);
    if (dist > params_.robot_standoff) {
      double step_len = std::min(params_.robot_speed * dt, dist - params_.robot_standoff);
      r.position += (d / dist) * step_len;
    }
    if (r.fire_cooldown == 0) {
      r.fire_cooldown = params_.robot_fire_ticks;
      if (rng.next_unit() < params_.robot_hit_prob) state_.shots_received += 1;
    }
    sync_robot_entities(scene, i);
  }

  state_.finished = state_.robots_alive() == 0;
}

}  // namespace vrc
