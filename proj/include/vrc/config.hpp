#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "vrc/camera.hpp"
#include "vrc/cockpit.hpp"
#include "vrc/scene_build.hpp"

namespace vrc {

enum class Game { Racing, Fps };
enum class Condition { Cp, Normal };

const char* game_name(Game g);
const char* condition_name(Condition c);
Game game_from_string(const std::string& s);
Condition condition_from_string(const std::string& s);
AnchorMode anchor_from_string(const std::string& s);
const char* anchor_name(AnchorMode a);

// Sinusoidal head-yaw sweep applied by the session bots. Off by default so
// panel depth stays flat through whole logged sessions.
struct HeadScan {
  double amplitude_deg = 0.0;
  double period_s = 4.0;
  bool operator==(const HeadScan&) const = default;
};

struct RunConfig {
  Game game = Game::Racing;
  Condition condition = Condition::Cp;
  uint64_t seed = 1;
  double dt = 1.0 / 30.0;  // fixed step; validation rejects anything else
  int width = 320;
  int height = 240;
  double hfov_deg = 90.0;
  CockpitConfig cockpit;
  HeadScan head_scan;
  TrackSpec track = default_track_spec();
  ArenaSpec arena = default_arena_spec();
  int render_every = 1;    // render every k-th tick; 0 disables rendering
  int tick_limit = 0;      // clean stop after this many ticks; 0 = natural end
  int timeout_ticks = 40000;  // exceeding this without finishing is an error
  std::string out_dir = "out";
};

RunConfig default_run_config(Game game);

// The head view camera (pose left identity; sessions pose it per tick).
Camera view_camera(const RunConfig& cfg);

void validate_run_config(const RunConfig& cfg);

nlohmann::json config_to_json(const RunConfig& cfg);

// Throws std::invalid_argument with a config.<field> path on any problem.
RunConfig config_from_json(const nlohmann::json& j);

RunConfig load_run_config(const std::string& path);

// FNV-1a over the canonical serialization of the fields that determine the
// session content. Excludes condition, render cadence, and output paths so
// the stamp is shared by the runs the acceptance checks compare.
uint64_t config_hash(const RunConfig& cfg);

}  // namespace vrc
