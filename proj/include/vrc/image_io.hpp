#pragma once

#include <string>
#include <vector>

#include "vrc/frame.hpp"

namespace vrc {

// Binary PPM (P6, maxval 255). An optional comment line carries the config
// stamp; the reader accepts and ignores '#' comments.
void write_ppm(const std::string& path, const Image8& img, const std::string& comment = "");
Image8 read_ppm(const std::string& path);

void write_mask_ppm(const std::string& path, const Mask& mask, const std::string& comment = "");
Mask read_mask_ppm(const std::string& path);

// Little-endian 32-bit rasters with an 8-byte header: 4-byte magic, uint16
// width, uint16 height. Magic selects the payload: "VRCD" one f32 per pixel
// (depth), "VRCI" one i32 per pixel (entity ids), "VRCM" two f32 per pixel
// (motion).
void write_raster_f32(const std::string& path, int w, int h, const std::vector<float>& data,
                      int channels);
std::vector<float> read_raster_f32(const std::string& path, int& w, int& h, int& channels);
void write_raster_i32(const std::string& path, int w, int h, const std::vector<int32_t>& data);
std::vector<int32_t> read_raster_i32(const std::string& path, int& w, int& h);

}  // namespace vrc
