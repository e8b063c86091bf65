#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ipcdv/sign_mag.hpp"

namespace ipcdv {

inline constexpr int kPrecinctLines = 4;   // precinct height in image lines
inline constexpr int kUnitPixels = 32;     // spatial width of one IPC unit
inline constexpr int kHorizontalLevels = 5;
inline constexpr int kVerticalLevels = 2;

enum class Orientation : std::uint8_t { LL, HL, LH, HH };

// Canonical band order for the 5-horizontal / 2-vertical decomposition of a
// 4-line precinct. Memory layouts, unit blocks and quad scans all follow
// this order.
enum Band : int {
  kLL5 = 0,
  kHL5,
  kHL4,
  kHL3,
  kHL2,
  kHL1,
  kLH2,
  kHH2,
  kLH1,
  kHH1,
  kBandCount
};

struct BandId {
  int level_h = 0;
  int level_v = 0;
  Orientation orient = Orientation::LL;
};

BandId band_id(Band b);
const char* band_name(Band b);

struct BandShape {
  Band band = kLL5;
  int width = 0;   // coefficient columns
  int height = 0;  // coefficient rows: 2 for level-1 bands, 1 otherwise
  int size() const { return width * height; }
};

struct PrecinctGeometry {
  int width = 0;  // pixels; multiple of 32
  std::array<BandShape, kBandCount> bands{};

  static PrecinctGeometry for_width(int width);
  int units() const { return width / kUnitPixels; }
  int coeffs_per_component() const { return width * kPrecinctLines; }
  const BandShape& shape(Band b) const { return bands[static_cast<std::size_t>(b)]; }

  friend bool operator==(const PrecinctGeometry&, const PrecinctGeometry&) = default;
};

struct BandGrid {
  BandShape shape;
  std::vector<SignMag32> data;  // row-major

  SignMag32 at(int row, int col) const;
  void set(int row, int col, SignMag32 v);

  friend bool operator==(const BandGrid&, const BandGrid&) = default;
};

// All band coefficients covering 4 image lines of one component.
struct PrecinctCoeffs {
  int precinct_index = 0;
  int component = 0;
  std::array<BandGrid, kBandCount> bands{};  // canonical order

  friend bool operator==(const PrecinctCoeffs&, const PrecinctCoeffs&) = default;
};

// Zero-filled coefficient container for the given geometry.
PrecinctCoeffs make_precinct_coeffs(const PrecinctGeometry& geom, int precinct_index = 0,
                                    int component = 0);

struct PixelTriple {
  int r = 0, g = 0, b = 0;
};

struct YCbCr {
  std::int32_t y = 0, cb = 0, cr = 0;
};

// Reversible color transform: y = (r + 2g + b) >> 2, cb = b - g, cr = r - g.
YCbCr rct_forward(PixelTriple p, int bit_depth = 8);
PixelTriple rct_inverse(YCbCr c);

// LeGall 5/3 integer lifting with whole-sample mirror extension:
//   d[n] = x[2n+1] - floor((x[2n] + x[2n+2]) / 2)
//   s[n] = x[2n]   + floor((d[n-1] + d[n] + 2) / 4)
// Requires x.size() >= 2; perfectly invertible.
void dwt53_analyze_1d(std::span<const std::int32_t> x, std::vector<std::int32_t>& low,
                      std::vector<std::int32_t>& high);

std::vector<std::int32_t> dwt53_synthesize_1d(std::span<const std::int32_t> low,
                                              std::span<const std::int32_t> high);

using PrecinctLines = std::array<std::vector<std::int32_t>, kPrecinctLines>;

// 5H/2V cascade over 4 input lines: vertical level 1 on the lines, then the
// level-1 horizontal split; vertical + horizontal level 2 on the LL part;
// horizontal levels 3..5 down the lowpass chain.
PrecinctCoeffs decompose_precinct(const PrecinctLines& lines, int precinct_index = 0,
                                  int component = 0);

// Exact inverse of decompose_precinct. The pair is a bijection, so applying
// this to arbitrary coefficients and re-decomposing returns them unchanged.
PrecinctLines reconstruct_precinct(const PrecinctCoeffs& coeffs);

}  // namespace ipcdv
