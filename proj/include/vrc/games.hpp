#pragma once

#include <cstdint>
#include <vector>

#include "vrc/rng.hpp"
#include "vrc/scene.hpp"
#include "vrc/scene_build.hpp"

namespace vrc {

// Scripted pilot tuning. The speed limit is the 70 km/h vehicle cap the
// logs and tests rely on; the rest is free bot-behavior tuning.
struct RacingParams {
  double v_max = 19.444;  // m/s
  double accel = 6.0;
  double brake = 8.0;
  double corner_lat_accel = 1.2;  // sets braking targets ahead of turns
  double lookahead_base = 8.0;
  double lookahead_per_speed = 0.5;
  double steer_kp = 4.0;
  double steer_kd = 0.5;
  double max_yaw_rate = 1.2;  // rad/s
  double coin_radius = 1.2;
  double crash_pause_s = 3.0;
  double collision_margin = 0.8;  // barrier boxes inflate by this much
  double jitter_lateral = 0.4;    // bot aims at centerline +- this, reseeded 1 Hz
  int jitter_every_ticks = 30;
};

struct RacingState {
  Pose body;  // vehicle pose; z and pitch follow the track surface
  double speed = 0.0;
  int lap = 0;
  double progress = 0.0;  // arc length within the current lap
  int coins = 0;
  int crashes = 0;
  int pause_ticks = 0;  // remaining crash pause, in ticks
  int tick = 0;
  double elapsed = 0.0;
  double distance = 0.0;
  bool finished = false;
  std::vector<uint8_t> coin_alive;
  std::vector<uint8_t> barrier_contact;  // edge-trigger latch per barrier
  double jitter_target = 0.0;
  double prev_heading_err = 0.0;
};

// Binds a track spec to the entity ids of its scene; steps the scripted
// pilot. Crashing halts the car, waits out the pause, then respawns it on
// the centerline at its current progress; the latch keeps the drive-out of
// a centerline barrier from counting as a second crash.
class RacingSim {
 public:
  RacingSim(const TrackSpec& spec, const Scene& scene, RacingParams params = {});

  // Mutates coin alive flags in the scene; RNG feeds the steering jitter.
  void step(Scene& scene, DetRng& rng, double dt);

  const RacingState& state() const { return state_; }
  const TrackFrame& frame() const { return frame_; }
  const RacingParams& params() const { return params_; }
  int laps_required() const { return laps_; }

 private:
  void respawn();

  TrackFrame frame_;
  RacingParams params_;
  int laps_ = 2;
  std::vector<int32_t> coin_ids_;
  std::vector<Vec3> coin_centers_;
  std::vector<int32_t> barrier_ids_;
  RacingState state_;
};

struct FpsParams {
  double walk_speed = 1.5;
  double engage_range = 25.0;
  int player_fire_ticks = 15;  // 2 Hz at dt = 1/30
  double player_hit_prob = 0.8;
  int magazine_size = 5;
  int reload_ticks = 60;  // 2 s
  int robot_hp = 14;
  double robot_speed = 2.0;
  int robot_fire_ticks = 30;  // 1 Hz
  double robot_hit_prob = 0.5;
  double robot_standoff = 2.0;
  double body_turn_rate = 3.0;  // rad/s
  double head_return_rate = 2.0;
  double max_head_yaw = 1.2;
};

struct RobotState {
  Vec3 position;
  double yaw = 0.0;
  int hits = 0;
  bool alive = true;
  int fire_cooldown = 0;  // ticks
};

struct FpsState {
  Pose body;  // bot player; position on the floor, eye height added for rays
  double distance = 0.0;
  int shots_received = 0;
  int magazine = 5;
  int reload_remaining = 0;   // ticks
  int fire_cooldown = 0;      // ticks
  size_t waypoint = 0;
  double head_yaw = 0.0;  // aim offset, visual only
  int tick = 0;
  double elapsed = 0.0;
  int shots_fired = 0;
  std::vector<RobotState> robots;
  bool finished = false;

  int robots_alive() const {
    int n = 0;
    for (const auto& r : robots) n += r.alive ? 1 : 0;
    return n;
  }
};

// Patrol bot versus scripted robots. The player stops to engage any alive,
// visible robot within range; robots that detect the player pursue and
// return fire. All shot outcomes are seeded Bernoulli draws in a fixed
// order (player first, then robots by index).
class FpsSim {
 public:
  FpsSim(const ArenaSpec& spec, const Scene& scene, FpsParams params = {});

  void step(Scene& scene, DetRng& rng, double dt);

  const FpsState& state() const { return state_; }
  const FpsParams& params() const { return params_; }

 private:
  bool player_sees(const Scene& scene, const Vec3& eye, size_t robot) const;
  bool robot_sees_player(const Scene& scene, size_t robot, const Vec3& eye) const;
  void sync_robot_entities(Scene& scene, size_t robot);

  std::vector<Vec3> patrol_;  // open loop
  double detection_radius_ = 15.0;
  FpsParams params_;
  std::vector<int32_t> torso_ids_;
  std::vector<int32_t> head_ids_;
  FpsState state_;
};

constexpr double kRobotHeadHeight = 1.5;

}  // namespace vrc
