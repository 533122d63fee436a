#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "vrc/config.hpp"

using namespace vrc;
using nlohmann::json;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("default configs validate and map to the view camera") {
  for (Game g : {Game::Racing, Game::Fps}) {
    RunConfig cfg = default_run_config(g);
    CHECK(cfg.game == g);
    CHECK_NOTHROW(validate_run_config(cfg));
    Camera cam = view_camera(cfg);
    CHECK(cam.width == 320);
    CHECK(cam.height == 240);
    CHECK(cam.hfov == deg_to_rad(90.0));
    CHECK(cam.pose == Pose{});
  }
}

TEST_CASE("config json round trips every field") {
  RunConfig cfg = default_run_config(Game::Fps);
  cfg.condition = Condition::Normal;
  cfg.seed = 99;
  cfg.width = 160;
  cfg.height = 120;
  cfg.hfov_deg = 75.0;
  cfg.cockpit.coverage = 0.42;
  cfg.cockpit.distance = 1.5;
  cfg.cockpit.anchor = AnchorMode::Head;
  cfg.cockpit.enabled = {true, false, true, false};
  cfg.head_scan.amplitude_deg = 10.0;
  cfg.head_scan.period_s = 2.0;
  cfg.track.coins = {100.0, 900.0};
  cfg.track.barriers = {{400.0, 1.5}};
  cfg.render_every = 3;
  cfg.tick_limit = 500;
  cfg.timeout_ticks = 9999;
  cfg.out_dir = "elsewhere";

  RunConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.game == cfg.game);
  CHECK(back.condition == cfg.condition);
  CHECK(back.seed == cfg.seed);
  CHECK(back.dt == cfg.dt);
  CHECK(back.width == cfg.width);
  CHECK(back.height == cfg.height);
  CHECK(back.hfov_deg == cfg.hfov_deg);
  CHECK(back.cockpit.coverage == cfg.cockpit.coverage);
  CHECK(back.cockpit.distance == cfg.cockpit.distance);
  CHECK(back.cockpit.anchor == cfg.cockpit.anchor);
  CHECK(back.cockpit.enabled == cfg.cockpit.enabled);
  CHECK(back.head_scan == cfg.head_scan);
  CHECK(back.track == cfg.track);
  CHECK(back.arena == cfg.arena);
  CHECK(back.render_every == cfg.render_every);
  CHECK(back.tick_limit == cfg.tick_limit);
  CHECK(back.timeout_ticks == cfg.timeout_ticks);
  CHECK(back.out_dir == cfg.out_dir);
  CHECK(config_hash(back) == config_hash(cfg));
}

TEST_CASE("config hash ignores presentation fields") {
  RunConfig cfg = default_run_config(Game::Racing);
  uint64_t base = config_hash(cfg);
  CHECK(base != 0);

  RunConfig v = cfg;
  v.condition = Condition::Normal;
  CHECK(config_hash(v) == base);
  v = cfg;
  v.render_every = 17;
  CHECK(config_hash(v) == base);
  v = cfg;
  v.out_dir = "somewhere-else";
  CHECK(config_hash(v) == base);
}

TEST_CASE("config hash tracks the fields that shape the session") {
  RunConfig cfg = default_run_config(Game::Racing);
  uint64_t base = config_hash(cfg);

  RunConfig v = cfg;
  v.seed = 2;
  CHECK(config_hash(v) != base);
  v = cfg;
  v.game = Game::Fps;
  CHECK(config_hash(v) != base);
  v = cfg;
  v.width = 640;
  v.height = 480;
  CHECK(config_hash(v) != base);
  v = cfg;
  v.cockpit.coverage = 0.5;
  CHECK(config_hash(v) != base);
  v = cfg;
  v.track.coins.push_back(50.0);
  CHECK(config_hash(v) != base);
  v = cfg;
  v.head_scan.amplitude_deg = 5.0;
  CHECK(config_hash(v) != base);
  v = cfg;
  v.tick_limit = 300;
  CHECK(config_hash(v) != base);
}

TEST_CASE("config file loading reports open and parse failures") {
  CHECK_THROWS_WITH_AS(load_run_config("/nonexistent/nope.json"),
                       "cannot open config file: /nonexistent/nope.json", std::runtime_error);

  TempFile bad("vrc_cfg_bad.json", "{ not json ]");
  std::string prefix = "config file " + bad.path.string() + ": ";
  CHECK_THROWS_WITH_AS(load_run_config(bad.path.string()), doctest::Contains(prefix.c_str()),
                       std::invalid_argument);

  TempFile good("vrc_cfg_good.json", R"({"game": "fps", "seed": 7})");
  RunConfig cfg = load_run_config(good.path.string());
  CHECK(cfg.game == Game::Fps);
  CHECK(cfg.seed == 7);
}

TEST_CASE("config field errors carry the field path") {
  CHECK_THROWS_WITH_AS(config_from_json(json{{"seed", -5}}),
                       "config.seed: expected a non-negative integer", std::invalid_argument);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"bogus", 1}}), "config.bogus: unknown field",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"game", "chess"}}),
                       "config.game: unknown game 'chess' (expected racing or fps)",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"resolution", {{"width", "wide"}}}}),
                       "config.resolution.width: expected an integer", std::invalid_argument);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"cockpit", {{"anchor", "sideways"}}}}),
                       "config.cockpit.anchor: unknown anchor 'sideways' (expected body or head)",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"track", json::object()}}),
                       "config.track: missing centerline", std::invalid_argument);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"dt", 0.05}}),
                       "config.dt: must be 1/30 (fixed timestep)", std::invalid_argument);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"render_every", -1}}),
                       "config.render_every: must be >= 0", std::invalid_argument);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"hfov_deg", 200.0}}),
                       "config.hfov_deg: must be in (0, 180)", std::invalid_argument);
}

TEST_CASE("run config validation bounds") {
  RunConfig cfg = default_run_config(Game::Racing);
  cfg.width = 4;
  CHECK_THROWS_WITH_AS(validate_run_config(cfg), "config.resolution: must be at least 8x8",
                       std::invalid_argument);
  cfg = default_run_config(Game::Racing);
  cfg.timeout_ticks = 0;
  CHECK_THROWS_WITH_AS(validate_run_config(cfg), "config.timeout_ticks: must be >= 1",
                       std::invalid_argument);
  cfg = default_run_config(Game::Racing);
  cfg.out_dir.clear();
  CHECK_THROWS_WITH_AS(validate_run_config(cfg), "config.out_dir: must not be empty",
                       std::invalid_argument);
  cfg = default_run_config(Game::Racing);
  cfg.head_scan.amplitude_deg = 90.0;
  CHECK_THROWS_WITH_AS(validate_run_config(cfg),
                       "config.head_scan.amplitude_deg: must be in [0, 90)",
                       std::invalid_argument);
  cfg = default_run_config(Game::Racing);
  cfg.cockpit.coverage = 1.5;
  CHECK_THROWS_AS(validate_run_config(cfg), std::invalid_argument);
}
