#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ipcdv/wavelet.hpp"

namespace ipcdv {

// Planar pixel data. P5 input stays a single luma plane (no color
// transform); P6 input arrives as Y/Cb/Cr planes from the reversible
// transform.
struct PlanarImage {
  int width = 0;
  int height = 0;
  std::vector<std::vector<std::int32_t>> planes;

  int components() const { return static_cast<int>(planes.size()); }
};

// Binary PGM (P5) / PPM (P6), maxval 255 only. Errors name what broke:
// header syntax, the failing byte offset of truncated data, or the maxval.
PlanarImage ingest_image(const std::filesystem::path& path);
PlanarImage parse_pnm(std::span<const unsigned char> bytes, const std::string& origin);

// Planes padded by edge replication to a multiple of 32 columns and 4 lines.
// Reports keep the unpadded pixel count.
struct PaddedPlanes {
  int padded_width = 0;
  int padded_height = 0;
  int orig_width = 0;
  int orig_height = 0;
  std::vector<std::vector<std::int32_t>> planes;

  int components() const { return static_cast<int>(planes.size()); }
  int precincts() const { return padded_height / kPrecinctLines; }
  PrecinctLines precinct_lines(int plane, int precinct) const;
};

PaddedPlanes pad_to_precincts(const PlanarImage& image);

// Decomposes every precinct of one plane.
std::vector<PrecinctCoeffs> decompose_plane(const PaddedPlanes& padded, int plane,
                                            int component = 0);

}  // namespace ipcdv
