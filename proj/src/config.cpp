#include "vrc/config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "vrc/hash.hpp"

namespace vrc {

using nlohmann::json;

const char* game_name(Game g) { return g == Game::Racing ? "racing" : "fps"; }
const char* condition_name(Condition c) { return c == Condition::Cp ? "cp" : "normal"; }
const char* anchor_name(AnchorMode a) { return a == AnchorMode::Body ? "body" : "head"; }

Game game_from_string(const std::string& s) {
  if (s == "racing") return Game::Racing;
  if (s == "fps") return Game::Fps;
  throw std::invalid_argument("unknown game '" + s + "' (expected racing or fps)");
}

Condition condition_from_string(const std::string& s) {
  if (s == "cp") return Condition::Cp;
  if (s == "normal") return Condition::Normal;
  throw std::invalid_argument("unknown condition '" + s + "' (expected cp or normal)");
}

AnchorMode anchor_from_string(const std::string& s) {
  if (s == "body") return AnchorMode::Body;
  if (s == "head") return AnchorMode::Head;
  throw std::invalid_argument("unknown anchor '" + s + "' (expected body or head)");
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument(path + ": " + msg);
}

// Field access with config.<path> diagnostics and unknown-key rejection.
struct Reader {
  const json& j;
  std::string path;

  Reader(const json& jj, std::string p) : j(jj), path(std::move(p)) {
    if (!j.is_object()) fail(path, "expected an object");
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& [key, _] : j.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) fail(path + "." + key, "unknown field");
    }
  }

  bool has(const char* key) const { return j.contains(key); }

  const json& raw(const char* key) const { return j.at(key); }

  Reader child(const char* key) const { return Reader(j.at(key), path + "." + key); }

  double num(const char* key, double def) const {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
  }

  int integer(const char* key, int def) const {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
  }

  uint64_t u64(const char* key, uint64_t def) const {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_number_unsigned() && !v.is_number_integer())
      fail(path + "." + key, "expected a non-negative integer");
    if (v.is_number_integer() && v.get<int64_t>() < 0)
      fail(path + "." + key, "expected a non-negative integer");
    return v.get<uint64_t>();
  }

  std::string str(const char* key, const std::string& def) const {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
  }
};

Vec3 parse_vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number())
    fail(path, "expected [x, y, z]");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

CockpitConfig parse_cockpit(const Reader& r) {
  r.allow_only({"coverage", "distance", "anchor", "enabled", "capture_width",
                "capture_height"});
  CockpitConfig c;
  c.coverage = r.num("coverage", c.coverage);
  c.distance = r.num("distance", c.distance);
  if (r.has("anchor")) {
    try {
      c.anchor = anchor_from_string(r.str("anchor", "body"));
    } catch (const std::invalid_argument& e) {
      fail(r.path + ".anchor", e.what());
    }
  }
  if (r.has("enabled")) {
    const json& arr = r.raw("enabled");
    if (!arr.is_array()) fail(r.path + ".enabled", "expected a list of directions");
    c.enabled = {false, false, false, false};
    for (const auto& v : arr) {
      std::string s = v.is_string() ? v.get<std::string>() : "";
      if (s == "front") c.enabled[0] = true;
      else if (s == "back") c.enabled[1] = true;
      else if (s == "left") c.enabled[2] = true;
      else if (s == "right") c.enabled[3] = true;
      else fail(r.path + ".enabled", "expected front/back/left/right entries");
    }
  }
  c.capture_width = r.integer("capture_width", c.capture_width);
  c.capture_height = r.integer("capture_height", c.capture_height);
  return c;
}

json cockpit_to_json(const CockpitConfig& c) {
  json enabled = json::array();
  const char* names[4] = {"front", "back", "left", "right"};
  for (int i = 0; i < 4; ++i)
    if (c.enabled[static_cast<size_t>(i)]) enabled.push_back(names[i]);
  return json{{"coverage", c.coverage},
              {"distance", c.distance},
              {"anchor", anchor_name(c.anchor)},
              {"enabled", enabled},
              {"capture_width", c.capture_width},
              {"capture_height", c.capture_height}};
}

TrackSpec parse_track(const Reader& r) {
  r.allow_only({"centerline", "width", "coins", "barriers", "laps"});
  TrackSpec t;
  t.centerline.clear();
  if (!r.has("centerline")) fail(r.path, "missing centerline");
  const json& cl = r.raw("centerline");
  if (!cl.is_array()) fail(r.path + ".centerline", "expected a list of points");
  for (size_t i = 0; i < cl.size(); ++i)
    t.centerline.push_back(
        parse_vec3(cl[i], r.path + ".centerline[" + std::to_string(i) + "]"));
  t.width = r.num("width", t.width);
  if (r.has("coins")) {
    const json& arr = r.raw("coins");
    if (!arr.is_array()) fail(r.path + ".coins", "expected a list of arc lengths");
    for (const auto& v : arr) {
      if (!v.is_number()) fail(r.path + ".coins", "expected numbers");
      t.coins.push_back(v.get<double>());
    }
  }
  if (r.has("barriers")) {
    const json& arr = r.raw("barriers");
    if (!arr.is_array()) fail(r.path + ".barriers", "expected a list");
    for (size_t i = 0; i < arr.size(); ++i) {
      Reader br(arr[i], r.path + ".barriers[" + std::to_string(i) + "]");
      br.allow_only({"s", "lateral"});
      t.barriers.push_back({br.num("s", 0.0), br.num("lateral", 0.0)});
    }
  }
  t.laps = r.integer("laps", t.laps);
  return t;
}

json track_to_json(const TrackSpec& t) {
  json cl = json::array();
  for (const auto& p : t.centerline) cl.push_back(vec3_to_json(p));
  json barriers = json::array();
  for (const auto& b : t.barriers) barriers.push_back({{"s", b.s}, {"lateral", b.lateral}});
  return json{{"centerline", cl},
              {"width", t.width},
              {"coins", t.coins},
              {"barriers", barriers},
              {"laps", t.laps}};
}

ArenaSpec parse_arena(const Reader& r) {
  r.allow_only({"walls", "robot_spawns", "patrol", "detection_radius"});
  ArenaSpec a;
  a.walls.clear();
  a.robot_spawns.clear();
  a.patrol.clear();
  if (r.has("walls")) {
    const json& arr = r.raw("walls");
    if (!arr.is_array()) fail(r.path + ".walls", "expected a list");
    for (size_t i = 0; i < arr.size(); ++i) {
      Reader wr(arr[i], r.path + ".walls[" + std::to_string(i) + "]");
      wr.allow_only({"min", "max"});
      if (!wr.has("min") || !wr.has("max")) fail(wr.path, "wall needs min and max");
      a.walls.push_back(
          {parse_vec3(wr.raw("min"), wr.path + ".min"), parse_vec3(wr.raw("max"), wr.path + ".max")});
    }
  }
  if (!r.has("robot_spawns")) fail(r.path, "missing robot_spawns");
  const json& spawns = r.raw("robot_spawns");
  if (!spawns.is_array()) fail(r.path + ".robot_spawns", "expected a list");
  for (size_t i = 0; i < spawns.size(); ++i) {
    Reader sr(spawns[i], r.path + ".robot_spawns[" + std::to_string(i) + "]");
    sr.allow_only({"position", "yaw"});
    if (!sr.has("position")) fail(sr.path, "spawn needs a position");
    Pose p;
    p.position = parse_vec3(sr.raw("position"), sr.path + ".position");
    p.yaw = sr.num("yaw", 0.0);
    a.robot_spawns.push_back(p);
  }
  if (!r.has("patrol")) fail(r.path, "missing patrol");
  const json& patrol = r.raw("patrol");
  if (!patrol.is_array()) fail(r.path + ".patrol", "expected a list of points");
  for (size_t i = 0; i < patrol.size(); ++i)
    a.patrol.push_back(parse_vec3(patrol[i], r.path + ".patrol[" + std::to_string(i) + "]"));
  a.detection_radius = r.num("detection_radius", a.detection_radius);
  return a;
}

json arena_to_json(const ArenaSpec& a) {
  json walls = json::array();
  for (const auto& w : a.walls)
    walls.push_back({{"min", vec3_to_json(w.min)}, {"max", vec3_to_json(w.max)}});
  json spawns = json::array();
  for (const auto& s : a.robot_spawns)
    spawns.push_back({{"position", vec3_to_json(s.position)}, {"yaw", s.yaw}});
  json patrol = json::array();
  for (const auto& p : a.patrol) patrol.push_back(vec3_to_json(p));
  return json{{"walls", walls},
              {"robot_spawns", spawns},
              {"patrol", patrol},
              {"detection_radius", a.detection_radius}};
}

}  // namespace

RunConfig default_run_config(Game game) {
  RunConfig cfg;
  cfg.game = game;
  return cfg;
}

Camera view_camera(const RunConfig& cfg) {
  Camera cam;
  cam.width = cfg.width;
  cam.height = cfg.height;
  cam.hfov = deg_to_rad(cfg.hfov_deg);
  return cam;
}

void validate_run_config(const RunConfig& cfg) {
  if (std::abs(cfg.dt - 1.0 / 30.0) > 1e-12)
    throw std::invalid_argument("config.dt: must be 1/30 (fixed timestep)");
  if (cfg.width < 8 || cfg.height < 8)
    throw std::invalid_argument("config.resolution: must be at least 8x8");
  if (!(cfg.hfov_deg > 0.0 && cfg.hfov_deg < 180.0))
    throw std::invalid_argument("config.hfov_deg: must be in (0, 180)");
  try {
    validate_cockpit_config(cfg.cockpit);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config.cockpit: ") + e.what());
  }
  if (!(cfg.head_scan.amplitude_deg >= 0.0 && cfg.head_scan.amplitude_deg < 90.0))
    throw std::invalid_argument("config.head_scan.amplitude_deg: must be in [0, 90)");
  if (!(cfg.head_scan.period_s > 0.0))
    throw std::invalid_argument("config.head_scan.period_s: must be positive");
  try {
    validate_track_spec(cfg.track);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config.track: ") + e.what());
  }
  try {
    validate_arena_spec(cfg.arena);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config.arena: ") + e.what());
  }
  if (cfg.render_every < 0)
    throw std::invalid_argument("config.render_every: must be >= 0");
  if (cfg.tick_limit < 0) throw std::invalid_argument("config.tick_limit: must be >= 0");
  if (cfg.timeout_ticks < 1)
    throw std::invalid_argument("config.timeout_ticks: must be >= 1");
  if (cfg.out_dir.empty()) throw std::invalid_argument("config.out_dir: must not be empty");
}

json config_to_json(const RunConfig& cfg) {
  return json{{"game", game_name(cfg.game)},
              {"condition", condition_name(cfg.condition)},
              {"seed", cfg.seed},
              {"dt", cfg.dt},
              {"resolution", {{"width", cfg.width}, {"height", cfg.height}}},
              {"hfov_deg", cfg.hfov_deg},
              {"cockpit", cockpit_to_json(cfg.cockpit)},
              {"head_scan",
               {{"amplitude_deg", cfg.head_scan.amplitude_deg},
                {"period_s", cfg.head_scan.period_s}}},
              {"track", track_to_json(cfg.track)},
              {"arena", arena_to_json(cfg.arena)},
              {"render_every", cfg.render_every},
              {"tick_limit", cfg.tick_limit},
              {"timeout_ticks", cfg.timeout_ticks},
              {"out_dir", cfg.out_dir}};
}

RunConfig config_from_json(const json& j) {
  Reader r(j, "config");
  r.allow_only({"game", "condition", "seed", "dt", "resolution", "hfov_deg", "cockpit",
                "head_scan", "track", "arena", "render_every", "tick_limit", "timeout_ticks",
                "out_dir"});
  RunConfig cfg;
  try {
    cfg.game = game_from_string(r.str("game", "racing"));
  } catch (const std::invalid_argument& e) {
    fail("config.game", e.what());
  }
  try {
    cfg.condition = condition_from_string(r.str("condition", "cp"));
  } catch (const std::invalid_argument& e) {
    fail("config.condition", e.what());
  }
  cfg.seed = r.u64("seed", cfg.seed);
  cfg.dt = r.num("dt", cfg.dt);
  if (r.has("resolution")) {
    Reader rr = r.child("resolution");
    rr.allow_only({"width", "height"});
    cfg.width = rr.integer("width", cfg.width);
    cfg.height = rr.integer("height", cfg.height);
  }
  cfg.hfov_deg = r.num("hfov_deg", cfg.hfov_deg);
  if (r.has("cockpit")) cfg.cockpit = parse_cockpit(r.child("cockpit"));
  if (r.has("head_scan")) {
    Reader hr = r.child("head_scan");
    hr.allow_only({"amplitude_deg", "period_s"});
    cfg.head_scan.amplitude_deg = hr.num("amplitude_deg", cfg.head_scan.amplitude_deg);
    cfg.head_scan.period_s = hr.num("period_s", cfg.head_scan.period_s);
  }
  if (r.has("track")) cfg.track = parse_track(r.child("track"));
  if (r.has("arena")) cfg.arena = parse_arena(r.child("arena"));
  cfg.render_every = r.integer("render_every", cfg.render_every);
  cfg.tick_limit = r.integer("tick_limit", cfg.tick_limit);
  cfg.timeout_ticks = r.integer("timeout_ticks", cfg.timeout_ticks);
  cfg.out_dir = r.str("out_dir", cfg.out_dir);
  validate_run_config(cfg);
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
  return config_from_json(j);
}

uint64_t config_hash(const RunConfig& cfg) {
  json j{{"game", game_name(cfg.game)},
         {"seed", cfg.seed},
         {"dt", cfg.dt},
         {"resolution", {{"width", cfg.width}, {"height", cfg.height}}},
         {"hfov_deg", cfg.hfov_deg},
         {"cockpit", cockpit_to_json(cfg.cockpit)},
         {"head_scan",
          {{"amplitude_deg", cfg.head_scan.amplitude_deg},
           {"period_s", cfg.head_scan.period_s}}},
         {"track", track_to_json(cfg.track)},
         {"arena", arena_to_json(cfg.arena)},
         {"tick_limit", cfg.tick_limit},
         {"timeout_ticks", cfg.timeout_ticks}};
  return fnv1a64(j.dump());
}

}  // namespace vrc
