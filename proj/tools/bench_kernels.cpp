#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "vrc/config.hpp"
#include "vrc/flow.hpp"
#include "vrc/parallel.hpp"
#include "vrc/render.hpp"
#include "vrc/scene_build.hpp"

using namespace vrc;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename F>
double best_of(int reps, F&& fn) {
  double best = 1e30;
  for (int i = 0; i < reps; ++i) {
    auto t0 = Clock::now();
    fn();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 5;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--threads" && i + 1 < argc) set_thread_count(std::atoi(argv[++i]));
    else if (a == "--reps" && i + 1 < argc) reps = std::atoi(argv[++i]);
  }

  RunConfig cfg = default_run_config(Game::Racing);
  Scene scene = build_racing_scene(cfg.track, cfg.seed);
  Camera cam = view_camera(cfg);
  cam.pose = Pose{{300.0, 0.0, 1.22}, 0.0};

  FrameBundle a = render(scene, cam);
  FrameBundle a_ref = render_reference(scene, cam);
  Camera cam2 = cam;
  cam2.pose.position.x += 0.5;
  FrameBundle b = render(scene, cam2);

  FlowField f_par = estimate_flow(a, b);
  FlowField f_ser = estimate_flow_reference(a, b);

  double t_render_par = best_of(reps, [&] { render(scene, cam); });
  double t_render_ser = best_of(reps, [&] { render_reference(scene, cam); });
  double t_flow_par = best_of(reps, [&] { estimate_flow(a, b); });
  double t_flow_ser = best_of(reps, [&] { estimate_flow_reference(a, b); });

  std::printf("threads: %d, frame %dx%d, best of %d\n", thread_count(), cam.width, cam.height,
              reps);
  std::printf("%-22s %10s %10s %8s %s\n", "kernel", "par ms", "serial ms", "speedup",
              "bit-identical");
  std::printf("%-22s %10.2f %10.2f %7.2fx %s\n", "render", t_render_par, t_render_ser,
              t_render_ser / t_render_par,
              (a.color.rgb == a_ref.color.rgb && a.depth == a_ref.depth) ? "yes" : "NO");
  std::printf("%-22s %10.2f %10.2f %7.2fx %s\n", "optical flow", t_flow_par, t_flow_ser,
              t_flow_ser / t_flow_par, f_par == f_ser ? "yes" : "NO");
  return 0;
}
