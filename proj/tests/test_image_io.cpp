#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

#include "vrc/image_io.hpp"
#include "vrc/rng.hpp"

using namespace vrc;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("ppm round trip") {
  Image8 img(33, 17);
  DetRng rng(1);
  for (auto& b : img.rgb) b = static_cast<uint8_t>(rng.next_u64() & 0xff);
  FileGuard f{temp_path("vrc_test_rt.ppm")};
  write_ppm(f.path, img, "cfg=0123456789abcdef");
  Image8 back = read_ppm(f.path);
  CHECK(back == img);
}

TEST_CASE("ppm reader rejects missing and malformed files") {
  CHECK_THROWS(read_ppm(temp_path("vrc_test_absent.ppm")));
  FileGuard f{temp_path("vrc_test_bad.ppm")};
  FILE* fp = std::fopen(f.path.c_str(), "wb");
  std::fputs("P5\n4 4\n255\n", fp);
  std::fclose(fp);
  CHECK_THROWS(read_ppm(f.path));
}

TEST_CASE("mask ppm round trip") {
  Mask m(21, 9);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x) m.set(x, y, static_cast<uint8_t>((x + y) % 2));
  FileGuard f{temp_path("vrc_test_mask.ppm")};
  write_mask_ppm(f.path, m);
  CHECK(read_mask_ppm(f.path) == m);
}

TEST_CASE("depth raster round trip keeps infinities") {
  int w = 19, h = 7;
  std::vector<float> depth(static_cast<size_t>(w) * h);
  for (size_t i = 0; i < depth.size(); ++i)
    depth[i] = (i % 5 == 0) ? std::numeric_limits<float>::infinity() : 0.25f * i;
  FileGuard f{temp_path("vrc_test_depth.f32")};
  write_raster_f32(f.path, w, h, depth, 1);
  int rw = 0, rh = 0, rc = 0;
  std::vector<float> back = read_raster_f32(f.path, rw, rh, rc);
  CHECK(rw == w);
  CHECK(rh == h);
  CHECK(rc == 1);
  CHECK(back == depth);
}

TEST_CASE("motion raster uses two channels") {
  int w = 5, h = 4;
  std::vector<float> motion(static_cast<size_t>(w) * h * 2);
  for (size_t i = 0; i < motion.size(); ++i) motion[i] = 0.5f - 0.1f * i;
  FileGuard f{temp_path("vrc_test_motion.f32")};
  write_raster_f32(f.path, w, h, motion, 2);
  int rw = 0, rh = 0, rc = 0;
  CHECK(read_raster_f32(f.path, rw, rh, rc) == motion);
  CHECK(rc == 2);
}

TEST_CASE("id raster round trip") {
  int w = 11, h = 6;
  std::vector<int32_t> ids(static_cast<size_t>(w) * h);
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int32_t>(i * 7) - 3;
  FileGuard f{temp_path("vrc_test_ids.i32")};
  write_raster_i32(f.path, w, h, ids);
  int rw = 0, rh = 0;
  CHECK(read_raster_i32(f.path, rw, rh) == ids);
  CHECK(rw == w);
  CHECK(rh == h);
}

TEST_CASE("raster readers check the magic") {
  FileGuard f{temp_path("vrc_test_magic.f32")};
  std::vector<int32_t> ids(4, 1);
  write_raster_i32(f.path, 2, 2, ids);  // VRCI payload
  int w = 0, h = 0, c = 0;
  CHECK_THROWS(read_raster_f32(f.path, w, h, c));
}

TEST_CASE("raster writer validates the payload size") {
  std::vector<float> depth(10, 1.0f);
  CHECK_THROWS(write_raster_f32(temp_path("vrc_test_sz.f32"), 4, 4, depth, 1));
}

TEST_CASE("truncated raster is rejected") {
  FileGuard f{temp_path("vrc_test_trunc.f32")};
  std::vector<float> depth(6, 2.0f);
  write_raster_f32(f.path, 3, 2, depth, 1);
  std::filesystem::resize_file(f.path, 12);
  int w = 0, h = 0, c = 0;
  CHECK_THROWS(read_raster_f32(f.path, w, h, c));
}
