#include "vrc/image_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace vrc {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(path, "cannot open for writing");
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(path, "cannot open for reading");
  return f;
}

// Skips whitespace and '#' comment lines between PPM header tokens.
int next_pnm_int(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c == '#' || std::isspace(c)) {
    if (c == '#') {
      while (c != '\n' && c != EOF) c = in.get();
    }
    c = in.get();
  }
  if (c == EOF) fail(path, "truncated header");
  int v = 0;
  bool any = false;
  while (std::isdigit(c)) {
    v = v * 10 + (c - '0');
    any = true;
    c = in.get();
  }
  if (!any) fail(path, "malformed header");
  return v;
}

void write_header8(std::ostream& out, const char magic[4], int w, int h) {
  if (w < 0 || h < 0 || w > 0xFFFF || h > 0xFFFF)
    throw std::invalid_argument("raster dimensions must fit in uint16");
  uint8_t hdr[8];
  std::memcpy(hdr, magic, 4);
  hdr[4] = static_cast<uint8_t>(w & 0xFF);
  hdr[5] = static_cast<uint8_t>(w >> 8);
  hdr[6] = static_cast<uint8_t>(h & 0xFF);
  hdr[7] = static_cast<uint8_t>(h >> 8);
  out.write(reinterpret_cast<const char*>(hdr), 8);
}

void read_header8(std::istream& in, const std::string& path, const char magic[4], int& w, int& h) {
  uint8_t hdr[8];
  in.read(reinterpret_cast<char*>(hdr), 8);
  if (in.gcount() != 8) fail(path, "truncated header");
  if (std::memcmp(hdr, magic, 4) != 0) fail(path, "bad magic");
  w = hdr[4] | (hdr[5] << 8);
  h = hdr[6] | (hdr[7] << 8);
}

}  // namespace

void write_ppm(const std::string& path, const Image8& img, const std::string& comment) {
  auto f = open_out(path);
  f << "P6\n";
  if (!comment.empty()) f << "# " << comment << "\n";
  f << img.width << " " << img.height << "\n255\n";
  f.write(reinterpret_cast<const char*>(img.rgb.data()),
          static_cast<std::streamsize>(img.rgb.size()));
  if (!f) fail(path, "write failed");
}

Image8 read_ppm(const std::string& path) {
  auto f = open_in(path);
  char m0 = static_cast<char>(f.get()), m1 = static_cast<char>(f.get());
  if (m0 != 'P' || m1 != '6') fail(path, "not a P6 PPM");
  int w = next_pnm_int(f, path);
  int h = next_pnm_int(f, path);
  int maxval = next_pnm_int(f, path);
  if (maxval != 255) fail(path, "unsupported maxval");
  Image8 img(w, h);
  f.read(reinterpret_cast<char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (f.gcount() != static_cast<std::streamsize>(img.rgb.size())) fail(path, "truncated pixels");
  return img;
}

void write_mask_ppm(const std::string& path, const Mask& mask, const std::string& comment) {
  Image8 img(mask.width, mask.height);
  for (size_t i = 0; i < mask.bits.size(); ++i) {
    uint8_t v = mask.bits[i] ? 255 : 0;
    img.rgb[3 * i] = img.rgb[3 * i + 1] = img.rgb[3 * i + 2] = v;
  }
  write_ppm(path, img, comment);
}

Mask read_mask_ppm(const std::string& path) {
  Image8 img = read_ppm(path);
  Mask m(img.width, img.height);
  for (size_t i = 0; i < m.bits.size(); ++i) m.bits[i] = img.rgb[3 * i] > 127 ? 1 : 0;
  return m;
}

void write_raster_f32(const std::string& path, int w, int h, const std::vector<float>& data,
                      int channels) {
  if (channels != 1 && channels != 2) throw std::invalid_argument("channels must be 1 or 2");
  if (data.size() != static_cast<size_t>(w) * h * channels)
    throw std::invalid_argument("raster size mismatch");
  auto f = open_out(path);
  write_header8(f, channels == 1 ? "VRCD" : "VRCM", w, h);
  f.write(reinterpret_cast<const char*>(data.data()),
          static_cast<std::streamsize>(data.size() * sizeof(float)));
  if (!f) fail(path, "write failed");
}

std::vector<float> read_raster_f32(const std::string& path, int& w, int& h, int& channels) {
  auto f = open_in(path);
  uint8_t peek[4];
  f.read(reinterpret_cast<char*>(peek), 4);
  if (f.gcount() != 4) fail(path, "truncated header");
  if (std::memcmp(peek, "VRCD", 4) == 0)
    channels = 1;
  else if (std::memcmp(peek, "VRCM", 4) == 0)
    channels = 2;
  else
    fail(path, "bad magic");
  uint8_t dim[4];
  f.read(reinterpret_cast<char*>(dim), 4);
  if (f.gcount() != 4) fail(path, "truncated header");
  w = dim[0] | (dim[1] << 8);
  h = dim[2] | (dim[3] << 8);
  std::vector<float> data(static_cast<size_t>(w) * h * channels);
  f.read(reinterpret_cast<char*>(data.data()),
         static_cast<std::streamsize>(data.size() * sizeof(float)));
  if (f.gcount() != static_cast<std::streamsize>(data.size() * sizeof(float)))
    fail(path, "truncated payload");
  return data;
}

void write_raster_i32(const std::string& path, int w, int h, const std::vector<int32_t>& data) {
  if (data.size() != static_cast<size_t>(w) * h)
    throw std::invalid_argument("raster size mismatch");
  auto f = open_out(path);
  write_header8(f, "VRCI", w, h);
  f.write(reinterpret_cast<const char*>(data.data()),
          static_cast<std::streamsize>(data.size() * sizeof(int32_t)));
  if (!f) fail(path, "write failed");
}

std::vector<int32_t> read_raster_i32(const std::string& path, int& w, int& h) {
  auto f = open_in(path);
  read_header8(f, path, "VRCI", w, h);
  std::vector<int32_t> data(static_cast<size_t>(w) * h);
  f.read(reinterpret_cast<char*>(data.data()),
         static_cast<std::streamsize>(data.size() * sizeof(int32_t)));
  if (f.gcount() != static_cast<std::streamsize>(data.size() * sizeof(int32_t)))
    fail(path, "truncated payload");
  return data;
}

}  // namespace vrc
