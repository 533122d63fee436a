#include "vrc/scene_build.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vrc/rng.hpp"

namespace vrc {

void validate_track_spec(const TrackSpec& spec) {
  if (spec.centerline.size() < 8)
    throw std::invalid_argument("track centerline needs at least 8 vertices");
  if (!(spec.centerline.front() == spec.centerline.back()))
    throw std::invalid_argument("track centerline must be closed (first vertex repeated last)");
  for (const auto& p : spec.centerline)
    if (!is_finite(p)) throw std::invalid_argument("track centerline has non-finite vertex");
  for (size_t i = 0; i + 1 < spec.centerline.size(); ++i) {
    Vec3 d = spec.centerline[i + 1] - spec.centerline[i];
    if (std::hypot(d.x, d.y) < 1e-9)
      throw std::invalid_argument("track centerline segment " + std::to_string(i) +
                                  " has no horizontal extent");
  }
  if (!(spec.width > 0.0)) throw std::invalid_argument("track width must be positive");
  if (spec.laps < 1) throw std::invalid_argument("track laps must be at least 1");

  TrackFrame frame(spec);
  double total = frame.length();
  for (double s : spec.coins)
    if (!(s >= 0.0 && s < total))
      throw std::invalid_argument("coin arc-length position outside [0, track length)");
  for (const auto& b : spec.barriers) {
    if (!(b.s >= 0.0 && b.s < total))
      throw std::invalid_argument("barrier arc-length position outside [0, track length)");
    if (!(std::abs(b.lateral) <= spec.width / 2.0))
      throw std::invalid_argument("barrier lateral offset outside track width");
  }
}

void validate_arena_spec(const ArenaSpec& spec) {
  for (const auto& w : spec.walls) {
    if (!(w.min.x < w.max.x && w.min.y < w.max.y && w.min.z < w.max.z))
      throw std::invalid_argument("arena wall box must have min < max componentwise");
  }
  if (spec.robot_spawns.empty()) throw std::invalid_argument("arena needs at least one robot");
  for (size_t i = 0; i < spec.robot_spawns.size(); ++i) {
    const Vec3& p = spec.robot_spawns[i].position;
    for (const auto& w : spec.walls) {
      if (p.x >= w.min.x && p.x <= w.max.x && p.y >= w.min.y && p.y <= w.max.y)
        throw std::invalid_argument("robot spawn " + std::to_string(i) + " is inside a wall");
    }
  }
  if (spec.patrol.size() < 3)
    throw std::invalid_argument("patrol polyline needs at least 3 vertices");
  if (!(spec.patrol.front() == spec.patrol.back()))
    throw std::invalid_argument("patrol polyline must be closed");
  if (!(spec.detection_radius > 0.0))
    throw std::invalid_argument("robot detection radius must be positive");
}

TrackFrame::TrackFrame(const TrackSpec& spec) {
  if (spec.centerline.size() < 2 || !(spec.centerline.front() == spec.centerline.back()))
    throw std::invalid_argument("track centerline must be closed");
  pts_.assign(spec.centerline.begin(), spec.centerline.end() - 1);
  size_t n = pts_.size();
  seg_len_.resize(n);
  head_.resize(n);
  pitch_.resize(n);
  cum_.resize(n);
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    cum_[i] = s;
    Vec3 d = pts_[(i + 1) % n] - pts_[i];
    double hxy = std::hypot(d.x, d.y);
    if (hxy < 1e-9) throw std::invalid_argument("degenerate track segment");
    seg_len_[i] = norm(d);
    head_[i] = std::atan2(d.y, d.x);
    pitch_[i] = std::atan2(d.z, hxy);
    s += seg_len_[i];
  }
  total_ = s;
}

double TrackFrame::wrap_s(double s) const {
  s = std::fmod(s, total_);
  if (s < 0.0) s += total_;
  return s;
}

size_t TrackFrame::segment_at(double s, double* local) const {
  s = wrap_s(s);
  auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  size_t i = static_cast<size_t>(it - cum_.begin()) - 1;
  if (local) *local = s - cum_[i];
  return i;
}

Vec3 TrackFrame::position(double s) const {
  double local = 0.0;
  size_t i = segment_at(s, &local);
  Vec3 a = pts_[i], b = pts_[(i + 1) % pts_.size()];
  double t = local / seg_len_[i];
  return a + (b - a) * t;
}

double TrackFrame::heading(double s) const { return head_[segment_at(s)]; }

double TrackFrame::pitch_angle(double s) const { return pitch_[segment_at(s)]; }

Vec3 TrackFrame::lateral(double s) const {
  double h = heading(s);
  return {-std::sin(h), std::cos(h), 0.0};
}

double TrackFrame::max_curvature(double s, double window) const {
  size_t n = pts_.size();
  size_t i = segment_at(s);
  double best = 0.0;
  double walked = 0.0;
  // Joints ahead of s: the joint at the end of segment i, then onward.
  double local = 0.0;
  segment_at(s, &local);
  walked = seg_len_[i] - local;
  for (size_t step = 0; step < n && walked <= window; ++step) {
    size_t cur = (i + step) % n;
    size_t nxt = (cur + 1) % n;
    double turn = std::abs(wrap_angle(head_[nxt] - head_[cur]));
    double span = std::min(60.0, 0.5 * (seg_len_[cur] + seg_len_[nxt]));
    best = std::max(best, turn / span);
    walked += seg_len_[nxt];
  }
  return best;
}

double TrackFrame::project(const Vec3& p, double s_hint) const {
  size_t n = pts_.size();
  size_t h = segment_at(s_hint);
  double best_d2 = std::numeric_limits<double>::infinity();
  double best_s = wrap_s(s_hint);
  for (int off = -2; off <= 2; ++off) {
    size_t i = static_cast<size_t>((static_cast<int>(h) + off + 2 * static_cast<int>(n)) %
                                   static_cast<int>(n));
    Vec3 a = pts_[i], b = pts_[(i + 1) % n];
    double dx = b.x - a.x, dy = b.y - a.y;
    double len2 = dx * dx + dy * dy;
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    double cx = a.x + t * dx, cy = a.y + t * dy;
    double d2 = (p.x - cx) * (p.x - cx) + (p.y - cy) * (p.y - cy);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_s = cum_[i] + t * seg_len_[i];
    }
  }
  return best_s;
}

namespace {

void add_ground(Scene& scene, Vec3 base, Vec3 check, double cell) {
  Entity g;
  g.shape = GroundPlane{0.0};
  g.albedo = base;
  g.checker_albedo = check;
  g.checker_cell = cell;
  g.role = Role::Ground;
  scene.add(g);
}

}  // namespace

Scene build_racing_scene(const TrackSpec& spec, uint64_t seed) {
  validate_track_spec(spec);
  TrackFrame frame(spec);

  Scene scene;
  add_ground(scene, {0.38, 0.42, 0.33}, {0.45, 0.49, 0.40}, 4.0);

  size_t nseg = frame.segment_count();
  for (size_t i = 0; i < nseg; ++i) {
    Vec3 a = spec.centerline[i], b = spec.centerline[i + 1];
    double h = std::atan2(b.y - a.y, b.x - a.x);
    Vec3 n{-std::sin(h), std::cos(h), 0.0};
    Vec3 off = n * (spec.width / 2.0);
    Vec3 lift{0.0, 0.0, kTrackLift};
    Entity q;
    q.shape = Quad{{a + off + lift, a - off + lift, b - off + lift, b + off + lift}};
    q.albedo = (i % 2 == 0) ? Vec3{0.18, 0.18, 0.20} : Vec3{0.22, 0.22, 0.24};
    q.role = Role::Ground;
    scene.add(q);
  }

  for (double s : spec.coins) {
    Vec3 p = frame.position(s);
    Entity c;
    c.shape = Sphere{{p.x, p.y, p.z + kTrackLift + kVehicleEyeHeight}, kCoinRadius};
    c.albedo = {0.95, 0.78, 0.12};
    c.role = Role::Coin;
    scene.add(c);
  }

  for (const auto& bp : spec.barriers) {
    Vec3 p = frame.position(bp.s) + frame.lateral(bp.s) * bp.lateral;
    Entity b;
    b.shape = Box{{-0.3, -0.75, 0.0}, {0.3, 0.75, 1.2}};
    b.albedo = {0.82, 0.25, 0.20};
    b.role = Role::Barrier;
    b.pose = Pose{{p.x, p.y, p.z + kTrackLift}, frame.heading(bp.s)};
    scene.add(b);
  }

  DetRng rng(seed);
  for (int i = 0; i < 40; ++i) {
    double s = rng.next_unit() * frame.length();
    double side = rng.next_unit() < 0.5 ? -1.0 : 1.0;
    double dist = spec.width / 2.0 + 4.0 + rng.next_unit() * 12.0;
    Vec3 p = frame.position(s) + frame.lateral(s) * (side * dist);
    Vec3 albedo{0.3 + 0.4 * rng.next_unit(), 0.3 + 0.4 * rng.next_unit(),
                0.3 + 0.4 * rng.next_unit()};
    Entity d;
    d.albedo = albedo;
    d.role = Role::Decor;
    if (rng.next_unit() < 0.5) {
      double r = 1.0 + 1.5 * rng.next_unit();
      d.shape = Sphere{{p.x, p.y, r}, r};
    } else {
      double hx = 0.8 + rng.next_unit(), hy = 0.8 + rng.next_unit();
      double hz = 1.0 + 2.0 * rng.next_unit();
      d.shape = Box{{-hx, -hy, 0.0}, {hx, hy, 2.0 * hz}};
      d.pose = Pose{{p.x, p.y, 0.0}, rng.next_unit() * 2.0 * kPi};
    }
    scene.add(d);
  }

  scene.validate();
  return scene;
}

Scene build_fps_scene(const ArenaSpec& spec, uint64_t seed) {
  validate_arena_spec(spec);
  (void)seed;  // arena construction is fully specified; seed kept for parity

  Scene scene;
  add_ground(scene, {0.42, 0.42, 0.44}, {0.48, 0.48, 0.50}, 3.0);

  for (const auto& w : spec.walls) {
    Entity e;
    e.shape = w;
    e.albedo = {0.55, 0.55, 0.55};
    e.role = Role::Wall;
    scene.add(e);
  }

  for (const auto& spawn : spec.robot_spawns) {
    Entity torso;
    torso.shape = Box{{-0.5, -0.5, 0.0}, {0.5, 0.5, 1.0}};
    torso.albedo = {0.60, 0.15, 0.15};
    torso.role = Role::Robot;
    torso.pose = spawn;
    scene.add(torso);

    Entity head;
    head.shape = Sphere{{0.0, 0.0, 1.5}, 0.5};
    head.albedo = {0.70, 0.25, 0.25};
    head.role = Role::Decor;
    head.pose = spawn;
    scene.add(head);
  }

  scene.validate();
  return scene;
}

std::vector<int32_t> entity_ids_with_role(const Scene& scene, Role role) {
  std::vector<int32_t> ids;
  for (const auto& e : scene.entities)
    if (e.role == role) ids.push_back(e.id);
  return ids;
}

TrackSpec default_track_spec() {
  // 12 segments: two 750 m straights, two 8 degree slope sections, rounded
  // corners. Lap length about 4.4 km.
  double z = 540.0 * std::tan(deg_to_rad(8.0));
  TrackSpec spec;
  spec.centerline = {
      {300, 0, 0},     {1050, 0, 0},    {1290, 120, 0},  {1350, 300, 0},
      {1350, 840, z},  {1290, 1020, z}, {1050, 1140, z}, {300, 1140, z},
      {60, 1020, z},   {0, 840, z},     {0, 300, 0},     {60, 120, 0},
      {300, 0, 0},
  };
  spec.width = 12.0;
  spec.laps = 2;

  TrackFrame frame(spec);
  double total = frame.length();
  for (int i = 0; i < 50; ++i) spec.coins.push_back((i + 0.5) / 50.0 * total);
  for (int i = 0; i < 20; ++i)
    spec.barriers.push_back({(i + 0.37) / 20.0 * total, i % 2 == 0 ? 3.0 : -3.0});
  return spec;
}

ArenaSpec default_arena_spec() {
  ArenaSpec spec;
  spec.walls = {
      {{-41, -41, 0}, {-40, 41, 6}},  // perimeter
      {{40, -41, 0}, {41, 41, 6}},
      {{-40, -41, 0}, {40, -40, 6}},
      {{-40, 40, 0}, {40, 41, 6}},
      {{-10, -12, 0}, {-9, 12, 6}},   // interior dividers
      {{4, 6, 0}, {14, 7, 6}},
      {{4, -7, 0}, {14, -6, 6}},
  };
  spec.robot_spawns = {
      {{-30, -30, 0}, deg_to_rad(45)},  {{30, -30, 0}, deg_to_rad(135)},
      {{30, 30, 0}, deg_to_rad(-135)},  {{-30, 30, 0}, deg_to_rad(-45)},
      {{0, 25, 0}, deg_to_rad(-90)},    {{-25, 0, 0}, 0.0},
  };
  spec.patrol = {{-20, -20, 0}, {20, -20, 0}, {20, 20, 0}, {-20, 20, 0}, {-20, -20, 0}};
  spec.detection_radius = 15.0;
  return spec;
}

}  // namespace vrc
