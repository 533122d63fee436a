#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "vrc/games.hpp"
#include "vrc/hash.hpp"
#include "vrc/render.hpp"
#include "vrc/session.hpp"

namespace vrc {

namespace {

// Decorrelates the behaviour stream from the scene-construction draws, which
// also start from the raw seed.
constexpr uint64_t kSimStreamSalt = 0x9e3779b97f4a7c15ull;

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

SessionLog run_session(const RunConfig& cfg, const FrameSink& sink) {
  validate_run_config(cfg);

  SessionLog log;
  log.game = cfg.game;
  log.condition = cfg.condition;
  log.seed = cfg.seed;
  log.dt = cfg.dt;
  log.cfg_hash = config_hash(cfg);

  Scene scene = cfg.game == Game::Racing ? build_racing_scene(cfg.track, cfg.seed)
                                         : build_fps_scene(cfg.arena, cfg.seed);
  DetRng rng(cfg.seed ^ kSimStreamSalt);
  Camera view = view_camera(cfg);
  CockpitRig rig = make_cockpit_rig(cfg.cockpit, view);

  std::optional<RacingSim> racing;
  std::optional<FpsSim> fps;
  if (cfg.game == Game::Racing) racing.emplace(cfg.track, scene);
  else fps.emplace(cfg.arena, scene);

  double scan_amp = deg_to_rad(cfg.head_scan.amplitude_deg);
  auto make_row = [&](int tick) {
    SessionRow row;
    row.tick = tick;
    row.time_s = tick * cfg.dt;
    if (racing) {
      const RacingState& s = racing->state();
      row.body = s.body;
      // The driver bot sweeps its head on a fixed clock; off by default.
      if (scan_amp != 0.0)
        row.head_yaw = scan_amp * std::sin(2.0 * kPi * row.time_s / cfg.head_scan.period_s);
      row.speed = s.speed;
      row.coins = s.coins;
      row.crashes = s.crashes;
      row.distance = s.distance;
    } else {
      const FpsState& s = fps->state();
      row.body = s.body;
      row.head_yaw = s.head_yaw;
      row.distance = s.distance;
      row.shots_received = s.shots_received;
      row.robots_alive = s.robots_alive();
    }
    return row;
  };

  bool cp = cfg.condition == Condition::Cp;
  std::optional<CockpitPrev> cprev;
  std::optional<RenderPrev> rprev;
  auto render_tick = [&](const SessionRow& row) {
    Mask mask = frame_region_mask(view, row.body, row.head_yaw, row.head_pitch, rig);
    if (cp) {
      ComposeResult res =
          compose(scene, row.body, row.head_yaw, row.head_pitch, rig, view,
                  cprev ? &*cprev : nullptr);
      cprev = snapshot_cockpit_prev(rig, scene, row.body, row.head_yaw, row.head_pitch, view);
      if (sink) sink(RenderedTick{row, res.frame, mask, &res});
    } else {
      Camera cam = head_camera(view, row.body, row.head_yaw, row.head_pitch);
      FrameBundle fb = render(scene, cam, rprev ? &*rprev : nullptr);
      rprev = snapshot_prev(cam, scene);
      if (sink) sink(RenderedTick{row, fb, mask, nullptr});
    }
  };

  bool rendering = cfg.render_every > 0;
  double prev_distance = 0.0;
  log.rows.push_back(make_row(0));
  if (rendering) render_tick(log.rows.back());

  for (int tick = 1;; ++tick) {
    bool finished;
    if (racing) {
      racing->step(scene, rng, cfg.dt);
      finished = racing->state().finished;
    } else {
      fps->step(scene, rng, cfg.dt);
      finished = fps->state().finished;
    }
    SessionRow row = make_row(tick);
    if (fps) {
      row.speed = (row.distance - prev_distance) / cfg.dt;
      prev_distance = row.distance;
    }
    log.rows.push_back(row);
    if (rendering && tick % cfg.render_every == 0) render_tick(log.rows.back());

    if (finished) break;
    if (cfg.tick_limit > 0 && tick >= cfg.tick_limit) break;
    if (tick >= cfg.timeout_ticks)
      throw std::runtime_error("session did not finish within " +
                               std::to_string(cfg.timeout_ticks) + " ticks");
  }
  return log;
}

std::string session_csv(const SessionLog& log) {
  std::string out;
  out += "# game=";
  out += game_name(log.game);
  out += "\n# condition=";
  out += condition_name(log.condition);
  out += "\n# seed=" + std::to_string(log.seed);
  out += "\n# dt=" + fmt6(log.dt);
  out += "\n# cfg=" + to_hex(log.cfg_hash);
  out +=
      "\n# columns: tick,time_s,pos_x,pos_y,pos_z,yaw,pitch,roll,head_yaw,"
      "head_pitch,speed,coins,crashes,distance,shots_received,robots_alive\n";
  for (const SessionRow& r : log.rows) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%d,%.6f,%d,%d\n",
                  r.tick, r.time_s, r.body.position.x, r.body.position.y, r.body.position.z,
                  r.body.yaw, r.body.pitch, r.body.roll, r.head_yaw, r.head_pitch, r.speed,
                  r.coins, r.crashes, r.distance, r.shots_received, r.robots_alive);
    out += buf;
  }
  return out;
}

SessionLog parse_session_csv(const std::string& text) {
  SessionLog log;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool saw_columns = false;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("session csv line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto starts = [&](const char* p) { return line.rfind(p, 0) == 0; };
      if (starts("# game=")) log.game = game_from_string(line.substr(7));
      else if (starts("# condition=")) log.condition = condition_from_string(line.substr(12));
      else if (starts("# seed=")) log.seed = std::stoull(line.substr(7));
      else if (starts("# dt=")) log.dt = std::stod(line.substr(5));
      else if (starts("# cfg=")) log.cfg_hash = std::stoull(line.substr(6), nullptr, 16);
      else if (starts("# columns:")) saw_columns = true;
      else fail("unknown header line");
      continue;
    }
    if (!saw_columns) fail("data before the columns header");
    SessionRow r;
    int n = std::sscanf(line.c_str(),
                        "%d,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%d,%d,%lf,%d,%d", &r.tick,
                        &r.time_s, &r.body.position.x, &r.body.position.y, &r.body.position.z,
                        &r.body.yaw, &r.body.pitch, &r.body.roll, &r.head_yaw, &r.head_pitch,
                        &r.speed, &r.coins, &r.crashes, &r.distance, &r.shots_received,
                        &r.robots_alive);
    if (n != 16) fail("expected 16 comma-separated fields");
    log.rows.push_back(r);
  }
  if (!saw_columns) {
    line_no = 0;
    fail("missing columns header");
  }
  return log;
}

std::string session_summary_json(const SessionLog& log) {
  nlohmann::ordered_json j;
  j["game"] = game_name(log.game);
  j["condition"] = condition_name(log.condition);
  j["seed"] = log.seed;
  j["cfg"] = to_hex(log.cfg_hash);
  j["dt"] = log.dt;
  static const SessionRow kEmpty;
  const SessionRow& r = log.rows.empty() ? kEmpty : log.rows.back();
  j["ticks"] = r.tick;
  j["time_s"] = r.time_s;
  j["coins"] = r.coins;
  j["crashes"] = r.crashes;
  j["distance_m"] = r.distance;
  j["shots_received"] = r.shots_received;
  j["robots_alive"] = r.robots_alive;
  return j.dump(2) + "\n";
}

}  // namespace vrc
