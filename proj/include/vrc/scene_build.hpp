#pragma once

#include <cstdint>
#include <vector>

#include "vrc/scene.hpp"

namespace vrc {

struct BarrierPlacement {
  double s = 0.0;        // arc-length position along the centerline
  double lateral = 0.0;  // signed offset, positive toward track-left
  bool operator==(const BarrierPlacement&) const = default;
};

// Closed-loop racing track. The centerline repeats its first vertex at the
// end; segment slopes come from the vertex z values.
struct TrackSpec {
  std::vector<Vec3> centerline;
  double width = 12.0;
  std::vector<double> coins;  // arc-length positions, on the centerline
  std::vector<BarrierPlacement> barriers;
  int laps = 2;
  bool operator==(const TrackSpec&) const = default;
};

void validate_track_spec(const TrackSpec& spec);

// Walled FPS arena. Robot count equals the number of spawn poses.
struct ArenaSpec {
  std::vector<Box> walls;  // world-axis-aligned
  std::vector<Pose> robot_spawns;
  std::vector<Vec3> patrol;  // closed polyline walked by the bot player
  double detection_radius = 15.0;
  bool operator==(const ArenaSpec&) const = default;
};

void validate_arena_spec(const ArenaSpec& spec);

// The demo specs used by the default configs: a 12-segment loop with two 8
// degree slope sections, and an 80x80 m arena with six robots.
TrackSpec default_track_spec();
ArenaSpec default_arena_spec();

// Arc-length frame over the closed centerline. Arc length uses true 3D
// segment lengths; queries wrap modulo the lap length.
class TrackFrame {
 public:
  explicit TrackFrame(const TrackSpec& spec);

  double length() const { return total_; }
  size_t segment_count() const { return seg_len_.size(); }

  Vec3 position(double s) const;       // point on the centerline
  double heading(double s) const;      // horizontal tangent angle
  double pitch_angle(double s) const;  // slope angle of the segment at s
  Vec3 lateral(double s) const;        // horizontal unit normal, track-left

  // Largest per-joint curvature magnitude over [s, s + window].
  double max_curvature(double s, double window) const;

  // Arc length of the centerline point nearest to p, searched around the
  // segment containing s_hint (handles lap wrap).
  double project(const Vec3& p, double s_hint) const;

 private:
  size_t segment_at(double s, double* local = nullptr) const;
  double wrap_s(double s) const;

  std::vector<Vec3> pts_;      // open list, pts_[i] -> pts_[(i+1)%n]
  std::vector<double> seg_len_;
  std::vector<double> cum_;    // cum_[i] = arc length at pts_[i]
  std::vector<double> head_;   // per-segment horizontal heading
  std::vector<double> pitch_;  // per-segment slope angle
  double total_ = 0.0;
};

// Entities appear in a fixed order: ground, track quads, coins (one per
// placement, in order), barriers (in order), then seeded roadside decor.
// The vehicle itself has no entity.
Scene build_racing_scene(const TrackSpec& spec, uint64_t seed);

// Order: ground, walls (uniform grey), then per robot a torso box with role
// Robot followed immediately by its head sphere (role Decor, dies with the
// torso).
Scene build_fps_scene(const ArenaSpec& spec, uint64_t seed);

// Ids of the role-tagged entities in construction order.
std::vector<int32_t> entity_ids_with_role(const Scene& scene, Role role);

// Height of the eye above the local track surface / arena floor.
constexpr double kVehicleEyeHeight = 1.2;
constexpr double kPlayerEyeHeight = 1.6;
constexpr double kCoinRadius = 0.5;
constexpr double kTrackLift = 0.02;  // track quads float above the ground plane

}  // namespace vrc
