#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vrc/cockpit.hpp"
#include "vrc/config.hpp"
#include "vrc/frame.hpp"

namespace vrc {

// One logged tick. Every column exists for both games; fields a game does not
// produce stay zero.
struct SessionRow {
  int tick = 0;
  double time_s = 0.0;
  Pose body;
  double head_yaw = 0.0;
  double head_pitch = 0.0;
  double speed = 0.0;
  int coins = 0;
  int crashes = 0;
  double distance = 0.0;
  int shots_received = 0;
  int robots_alive = 0;
};

struct SessionLog {
  Game game = Game::Racing;
  Condition condition = Condition::Cp;
  uint64_t seed = 1;
  double dt = 1.0 / 30.0;
  uint64_t cfg_hash = 0;
  std::vector<SessionRow> rows;
};

// Handed to the sink for every rendered tick. `composed` is null in the
// normal condition. References are valid only during the call.
struct RenderedTick {
  const SessionRow& row;
  const FrameBundle& frame;
  const Mask& mask;  // panel-region geometry at this tick's pose
  const ComposeResult* composed;
};

using FrameSink = std::function<void(const RenderedTick&)>;

// Runs the scripted bot for the configured game until it finishes, the tick
// limit is reached, or the timeout trips (the last one throws). Renders every
// k-th tick into the sink; motion buffers span rendered ticks, not simulated
// ones. Deterministic for a fixed config.
SessionLog run_session(const RunConfig& cfg, const FrameSink& sink = {});

// CSV with '#' header lines (game, condition, seed, dt, cfg) and fixed
// six-decimal columns. parse rejects malformed input with a line number.
std::string session_csv(const SessionLog& log);
SessionLog parse_session_csv(const std::string& text);

// Compact end-of-run JSON: identity fields plus the final row's counters.
std::string session_summary_json(const SessionLog& log);

}  // namespace vrc
