#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "vrc/config.hpp"
#include "vrc/flow.hpp"
#include "vrc/games.hpp"
#include "vrc/hash.hpp"
#include "vrc/image_io.hpp"
#include "vrc/metrics.hpp"
#include "vrc/parallel.hpp"
#include "vrc/render.hpp"
#include "vrc/session.hpp"
#include "vrc/study.hpp"

namespace fs = std::filesystem;
using namespace vrc;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

struct Overrides {
  std::string config_path;
  std::string game;
  std::string condition;
  std::optional<uint64_t> seed;
  std::optional<int> render_every;
  std::string out;
  std::string resolution;
  std::optional<double> coverage;
  std::string anchor;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration file");
  cmd->add_option("--game", o.game, "game when no config file is given")
      ->check(CLI::IsMember({"racing", "fps"}));
  cmd->add_option("--condition", o.condition, "cp (panels on) or normal")
      ->check(CLI::IsMember({"cp", "normal"}));
  cmd->add_option("--seed", o.seed, "session seed");
  cmd->add_option("--render-every", o.render_every, "render every k-th tick, 0 disables");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--resolution", o.resolution, "frame size as WxH, e.g. 320x240");
  cmd->add_option("--coverage", o.coverage, "panel field-of-view coverage fraction");
  cmd->add_option("--anchor", o.anchor, "panel anchor frame")
      ->check(CLI::IsMember({"body", "head"}));
}

RunConfig build_config(const Overrides& o) {
  RunConfig cfg = o.config_path.empty()
                      ? default_run_config(o.game == "fps" ? Game::Fps : Game::Racing)
                      : load_run_config(o.config_path);
  if (!o.game.empty()) cfg.game = game_from_string(o.game);
  if (!o.condition.empty()) cfg.condition = condition_from_string(o.condition);
  if (o.seed) cfg.seed = *o.seed;
  if (o.render_every) cfg.render_every = *o.render_every;
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (!o.resolution.empty()) {
    int w = 0, h = 0;
    char tail = 0;
    if (std::sscanf(o.resolution.c_str(), "%dx%d%c", &w, &h, &tail) != 2)
      throw std::invalid_argument("--resolution expects WxH, got '" + o.resolution + "'");
    cfg.width = w;
    cfg.height = h;
  }
  if (o.coverage) cfg.cockpit.coverage = *o.coverage;
  if (!o.anchor.empty()) cfg.cockpit.anchor = anchor_from_string(o.anchor);
  validate_run_config(cfg);
  return cfg;
}

// One code path produces the metrics CSV for both the in-run sink and the
// offline recompute, so the two files can be compared byte for byte.
struct MetricsAccum {
  Camera camera;  // only the intrinsics matter
  double dt = 1.0 / 30.0;
  std::vector<std::string> regions;  // empty keeps all
  std::string csv;
  std::optional<FrameBundle> prev;
  int prev_tick = 0;

  void begin(uint64_t cfg_hash) { csv = metrics_csv_header(cfg_hash); }

  void add(int tick, const FrameBundle& frame, const Mask& mask) {
    std::optional<FlowField> flow;
    double dt_flow = dt;
    if (prev) {
      flow = estimate_flow(*prev, frame);
      dt_flow = dt * (tick - prev_tick);
    }
    auto stats = region_stats(frame, flow ? &*flow : nullptr, mask, camera, dt_flow);
    append_metrics_csv(csv, tick, stats, regions);
    prev = frame;
    prev_tick = tick;
  }
};

std::string frame_name(const char* prefix, int tick, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%06d.%s", prefix, tick, ext);
  return buf;
}

int cmd_simulate(const Overrides& o) {
  RunConfig cfg = build_config(o);
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  uint64_t hash = config_hash(cfg);
  std::string stamp = "cfg=" + to_hex(hash);

  write_text(dir / "config.json", config_to_json(cfg).dump(2) + "\n");

  MetricsAccum acc;
  acc.camera = view_camera(cfg);
  acc.dt = cfg.dt;
  acc.begin(hash);
  bool have_frames_dir = false;
  FrameSink sink = [&](const RenderedTick& rt) {
    if (!have_frames_dir) {
      fs::create_directories(dir / "frames");
      have_frames_dir = true;
    }
    fs::path frames = dir / "frames";
    write_ppm((frames / frame_name("frame", rt.row.tick, "ppm")).string(), rt.frame.color,
              stamp);
    write_raster_f32((frames / frame_name("depth", rt.row.tick, "f32")).string(),
                     rt.frame.width, rt.frame.height, rt.frame.depth, 1);
    write_raster_i32((frames / frame_name("id", rt.row.tick, "i32")).string(), rt.frame.width,
                     rt.frame.height, rt.frame.entity_id);
    acc.add(rt.row.tick, rt.frame, rt.mask);
  };

  SessionLog log = run_session(cfg, sink);
  write_text(dir / "session.csv", session_csv(log));
  write_text(dir / "summary.json", session_summary_json(log));
  if (cfg.render_every > 0) write_text(dir / "metrics.csv", acc.csv);

  nlohmann::json summary = nlohmann::json::parse(session_summary_json(log));
  std::cout << summary.dump() << "\n";
  return 0;
}

int cmd_snapshot(const Overrides& o, const std::vector<double>& pos,
                 std::optional<double> yaw_deg, std::optional<double> pitch_deg,
                 std::optional<double> roll_deg, double head_yaw_deg, double head_pitch_deg) {
  RunConfig cfg = build_config(o);
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  std::string stamp = "cfg=" + to_hex(config_hash(cfg));

  Scene scene = cfg.game == Game::Racing ? build_racing_scene(cfg.track, cfg.seed)
                                         : build_fps_scene(cfg.arena, cfg.seed);
  Pose body;
  if (cfg.game == Game::Racing) {
    RacingSim sim(cfg.track, scene);
    body = sim.state().body;
  } else {
    FpsSim sim(cfg.arena, scene);
    body = sim.state().body;
  }
  if (!pos.empty()) {
    if (pos.size() != 3) throw std::invalid_argument("--pos expects x,y,z");
    body.position = {pos[0], pos[1], pos[2]};
  }
  if (yaw_deg) body.yaw = deg_to_rad(*yaw_deg);
  if (pitch_deg) body.pitch = deg_to_rad(*pitch_deg);
  if (roll_deg) body.roll = deg_to_rad(*roll_deg);
  validate_pose(body);
  double hy = deg_to_rad(head_yaw_deg);
  double hp = deg_to_rad(head_pitch_deg);

  Camera view = view_camera(cfg);
  CockpitRig rig = make_cockpit_rig(cfg.cockpit, view);
  ComposeResult res = compose(scene, body, hy, hp, rig, view);
  FrameBundle plain = render(scene, head_camera(view, body, hy, hp));
  Mask mask = frame_region_mask(view, body, hy, hp, rig);

  write_ppm((dir / "composed.ppm").string(), res.frame.color, stamp);
  write_ppm((dir / "plain.ppm").string(), plain.color, stamp);
  write_mask_ppm((dir / "mask.ppm").string(), mask, stamp);
  std::printf("mask fraction: %.6f\n", mask.fraction());
  return 0;
}

std::vector<std::string> parse_regions(const std::string& arg) {
  std::vector<std::string> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inside") item = "inside-panels";
    else if (item == "outside") item = "outside-panels";
    if (item != "inside-panels" && item != "outside-panels" && item != "full")
      throw std::invalid_argument("--regions accepts inside, outside, full");
    out.push_back(item);
  }
  return out;
}

int cmd_metrics(const std::string& dir_s, const std::string& regions_arg,
                const std::string& out_override) {
  fs::path dir(dir_s);
  RunConfig cfg = load_run_config((dir / "config.json").string());
  SessionLog log = parse_session_csv(read_text(dir / "session.csv"));
  if (cfg.render_every <= 0)
    throw std::runtime_error("session was recorded with rendering disabled; no frames");

  MetricsAccum acc;
  acc.camera = view_camera(cfg);
  acc.dt = cfg.dt;
  if (!regions_arg.empty()) acc.regions = parse_regions(regions_arg);
  acc.begin(config_hash(cfg));

  Camera view = view_camera(cfg);
  CockpitRig rig = make_cockpit_rig(cfg.cockpit, view);
  fs::path frames = dir / "frames";
  size_t loaded = 0;
  for (const SessionRow& row : log.rows) {
    if (row.tick % cfg.render_every != 0) continue;
    fs::path color_path = frames / frame_name("frame", row.tick, "ppm");
    fs::path depth_path = frames / frame_name("depth", row.tick, "f32");
    if (!fs::exists(color_path) || !fs::exists(depth_path))
      throw std::runtime_error("missing stored frame for tick " + std::to_string(row.tick));
    FrameBundle bundle(cfg.width, cfg.height);
    Image8 color = read_ppm(color_path.string());
    if (color.width != cfg.width || color.height != cfg.height)
      throw std::runtime_error("stored frame size does not match the config");
    bundle.color = std::move(color);
    int w = 0, h = 0, ch = 0;
    bundle.depth = read_raster_f32(depth_path.string(), w, h, ch);
    if (w != cfg.width || h != cfg.height || ch != 1)
      throw std::runtime_error("stored depth raster does not match the config");
    Mask mask = frame_region_mask(view, row.body, row.head_yaw, row.head_pitch, rig);
    acc.add(row.tick, bundle, mask);
    ++loaded;
  }
  if (loaded == 0) throw std::runtime_error("no rendered frames found in " + frames.string());

  fs::path out_path = out_override.empty() ? dir / "metrics_offline.csv" : fs::path(out_override);
  write_text(out_path, acc.csv);
  std::cout << out_path.string() << "\n";
  return 0;
}

int cmd_analyze(const std::string& questionnaire, const std::string& performance,
                const std::string& out_dir, const std::string& weights) {
  StudyTable table = load_study_table(read_text(questionnaire), read_text(performance),
                                      weights == "kennedy");
  StudyReport report = analyze_study(table);
  fs::path dir(out_dir);
  fs::create_directories(dir);
  write_text(dir / "report.json", report_json(report));
  write_text(dir / "report.txt", report_text(report));
  std::cout << report_text(report);
  return 0;
}

int cmd_gen_scene(const std::string& game_s, const std::string& out_path) {
  RunConfig cfg = default_run_config(game_from_string(game_s));
  std::string text = config_to_json(cfg).dump(2) + "\n";
  if (out_path.empty()) std::cout << text;
  else write_text(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic cockpit-panel simulation workbench"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "renderer thread count (0 = library default)");

  Overrides sim_o;
  CLI::App* sim = app.add_subcommand("simulate", "run a scripted session and log it");
  add_common_options(sim, sim_o);
  sim->add_option("--threads", threads, "renderer thread count");

  Overrides snap_o;
  std::vector<double> snap_pos;
  std::optional<double> snap_yaw, snap_pitch, snap_roll;
  double snap_head_yaw = 0.0, snap_head_pitch = 0.0;
  CLI::App* snap = app.add_subcommand("snapshot", "render one composed/plain frame pair");
  add_common_options(snap, snap_o);
  snap->add_option("--pos", snap_pos, "body position x,y,z")->delimiter(',');
  snap->add_option("--yaw", snap_yaw, "body yaw in degrees");
  snap->add_option("--pitch", snap_pitch, "body pitch in degrees");
  snap->add_option("--roll", snap_roll, "body roll in degrees");
  snap->add_option("--head-yaw", snap_head_yaw, "head yaw offset in degrees");
  snap->add_option("--head-pitch", snap_head_pitch, "head pitch in degrees");
  snap->add_option("--threads", threads, "renderer thread count");

  std::string met_dir, met_regions, met_out;
  CLI::App* met = app.add_subcommand("metrics", "recompute metrics from stored frames");
  met->add_option("--dir", met_dir, "session output directory")->required();
  met->add_option("--regions", met_regions, "comma list: inside, outside, full");
  met->add_option("--out", met_out, "metrics CSV path (default <dir>/metrics_offline.csv)");
  met->add_option("--threads", threads, "renderer thread count");

  std::string an_q, an_p, an_out = "out", an_weights = "raw";
  CLI::App* an = app.add_subcommand("analyze", "score questionnaires and run the tests");
  an->add_option("--questionnaire", an_q, "questionnaire CSV")->required();
  an->add_option("--performance", an_p, "performance CSV")->required();
  an->add_option("--out", an_out, "output directory");
  an->add_option("--weights", an_weights, "ssq weighting")
      ->check(CLI::IsMember({"raw", "kennedy"}));

  std::string gen_game = "racing", gen_out;
  CLI::App* gen = app.add_subcommand("gen-scene", "emit a default config with scene spec");
  gen->add_option("--game", gen_game, "racing or fps")
      ->check(CLI::IsMember({"racing", "fps"}));
  gen->add_option("--out", gen_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_thread_count(threads);

  try {
    if (sim->parsed()) return cmd_simulate(sim_o);
    if (snap->parsed())
      return cmd_snapshot(snap_o, snap_pos, snap_yaw, snap_pitch, snap_roll, snap_head_yaw,
                          snap_head_pitch);
    if (met->parsed()) return cmd_metrics(met_dir, met_regions, met_out);
    if (an->parsed()) return cmd_analyze(an_q, an_p, an_out, an_weights);
    if (gen->parsed()) return cmd_gen_scene(gen_game, gen_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
