#include "ipcdv/wavelet.hpp"

#include <string>

namespace ipcdv {

namespace {

struct BandMeta {
  const char* name;
  int level_h;
  int level_v;
  Orientation orient;
};

constexpr BandMeta kBandMeta[kBandCount] = {
    {"LL5", 5, 2, Orientation::LL}, {"HL5", 5, 2, Orientation::HL},
    {"HL4", 4, 2, Orientation::HL}, {"HL3", 3, 2, Orientation::HL},
    {"HL2", 2, 2, Orientation::HL}, {"HL1", 1, 1, Orientation::HL},
    {"LH2", 2, 2, Orientation::LH}, {"HH2", 2, 2, Orientation::HH},
    {"LH1", 1, 1, Orientation::LH}, {"HH1", 1, 1, Orientation::HH},
};

int band_rows(Band b) { return kBandMeta[b].level_v == 1 ? 2 : 1; }

std::int32_t floor_div2(std::int64_t v) { return static_cast<std::int32_t>(v >> 1); }
std::int32_t floor_div4(std::int64_t v) { return static_cast<std::int32_t>(v >> 2); }

}  // namespace

BandId band_id(Band b) {
  const auto& m = kBandMeta[b];
  return BandId{m.level_h, m.level_v, m.orient};
}

const char* band_name(Band b) { return kBandMeta[b].name; }

PrecinctGeometry PrecinctGeometry::for_width(int width) {
  if (width <= 0) throw InvariantError("precinct width must be positive");
  if (width % kUnitPixels != 0)
    throw InvariantError("precinct width " + std::to_string(width) +
                         " is not a multiple of " + std::to_string(kUnitPixels));
  PrecinctGeometry geom;
  geom.width = width;
  for (int i = 0; i < kBandCount; ++i) {
    const Band b = static_cast<Band>(i);
    geom.bands[i] = BandShape{b, width >> kBandMeta[i].level_h, band_rows(b)};
  }
  return geom;
}

SignMag32 BandGrid::at(int row, int col) const {
  if (row < 0 || row >= shape.height || col < 0 || col >= shape.width)
    throw InvariantError(std::string(band_name(shape.band)) + ": coefficient (" +
                         std::to_string(row) + "," + std::to_string(col) + ") out of range");
  return data[static_cast<std::size_t>(row) * shape.width + col];
}

void BandGrid::set(int row, int col, SignMag32 v) {
  if (row < 0 || row >= shape.height || col < 0 || col >= shape.width)
    throw InvariantError(std::string(band_name(shape.band)) + ": coefficient (" +
                         std::to_string(row) + "," + std::to_string(col) + ") out of range");
  data[static_cast<std::size_t>(row) * shape.width + col] = v;
}

PrecinctCoeffs make_precinct_coeffs(const PrecinctGeometry& geom, int precinct_index,
                                    int component) {
  PrecinctCoeffs out;
  out.precinct_index = precinct_index;
  out.component = component;
  for (int i = 0; i < kBandCount; ++i) {
    out.bands[i].shape = geom.bands[i];
    out.bands[i].data.assign(static_cast<std::size_t>(geom.bands[i].size()), SignMag32{});
  }
  return out;
}

YCbCr rct_forward(PixelTriple p, int bit_depth) {
  const int limit = 1 << bit_depth;
  if (p.r < 0 || p.g < 0 || p.b < 0 || p.r >= limit || p.g >= limit || p.b >= limit)
    throw InvariantError("pixel channel outside " + std::to_string(bit_depth) + "-bit range");
  YCbCr c;
  c.y = (p.r + 2 * p.g + p.b) >> 2;
  c.cb = p.b - p.g;
  c.cr = p.r - p.g;
  return c;
}

PixelTriple rct_inverse(YCbCr c) {
  const std::int32_t g = c.y - ((c.cb + c.cr) >> 2);
  return PixelTriple{c.cr + g, g, c.cb + g};
}

void dwt53_analyze_1d(std::span<const std::int32_t> x, std::vector<std::int32_t>& low,
                      std::vector<std::int32_t>& high) {
  const std::size_t n = x.size();
  if (n < 2) throw InvariantError("dwt53_analyze_1d: signal length < 2");
  const std::size_t nh = n / 2;
  const std::size_t ns = (n + 1) / 2;
  high.resize(nh);
  low.resize(ns);
  for (std::size_t j = 0; j < nh; ++j) {
    // mirror at the right edge: x[n] -> x[n-2]
    const std::int32_t right = (2 * j + 2 < n) ? x[2 * j + 2] : x[n - 2];
    high[j] = x[2 * j + 1] - floor_div2(static_cast<std::int64_t>(x[2 * j]) + right);
  }
  for (std::size_t j = 0; j < ns; ++j) {
    const std::int32_t dprev = high[j == 0 ? 0 : j - 1];
    const std::int32_t dcur = high[j < nh ? j : nh - 1];
    low[j] = x[2 * j] + floor_div4(static_cast<std::int64_t>(dprev) + dcur + 2);
  }
}

std::vector<std::int32_t> dwt53_synthesize_1d(std::span<const std::int32_t> low,
                                              std::span<const std::int32_t> high) {
  const std::size_t ns = low.size();
  const std::size_t nh = high.size();
  if (ns < nh || ns > nh + 1 || ns + nh < 2)
    throw InvariantError("dwt53_synthesize_1d: mismatched band lengths");
  const std::size_t n = ns + nh;
  std::vector<std::int32_t> x(n);
  for (std::size_t j = 0; j < ns; ++j) {
    const std::int32_t dprev = high[j == 0 ? 0 : j - 1];
    const std::int32_t dcur = high[j < nh ? j : nh - 1];
    x[2 * j] = low[j] - floor_div4(static_cast<std::int64_t>(dprev) + dcur + 2);
  }
  for (std::size_t j = 0; j < nh; ++j) {
    const std::int32_t right = (2 * j + 2 < n) ? x[2 * j + 2] : x[n - 2];
    x[2 * j + 1] = high[j] + floor_div2(static_cast<std::int64_t>(x[2 * j]) + right);
  }
  return x;
}

namespace {

using Row = std::vector<std::int32_t>;

void encode_row(const Row& src, BandGrid& grid, int row) {
  for (std::size_t c = 0; c < src.size(); ++c)
    grid.data[static_cast<std::size_t>(row) * grid.shape.width + c] = encode_sign_mag(src[c]);
}

Row decode_row(const BandGrid& grid, int row) {
  Row out(static_cast<std::size_t>(grid.shape.width));
  for (std::size_t c = 0; c < out.size(); ++c)
    out[c] = decode_sign_mag(grid.data[static_cast<std::size_t>(row) * grid.shape.width + c]);
  return out;
}

}  // namespace

PrecinctCoeffs decompose_precinct(const PrecinctLines& lines, int precinct_index,
                                  int component) {
  const int width = static_cast<int>(lines[0].size());
  for (const auto& line : lines)
    if (static_cast<int>(line.size()) != width)
      throw InvariantError("decompose_precinct: ragged input lines");
  const PrecinctGeometry geom = PrecinctGeometry::for_width(width);
  PrecinctCoeffs out = make_precinct_coeffs(geom, precinct_index, component);

  // Vertical level 1 over the 4 lines.
  std::array<Row, 2> vlow{Row(width), Row(width)};
  std::array<Row, 2> vhigh{Row(width), Row(width)};
  {
    std::vector<std::int32_t> col(kPrecinctLines), lo, hi;
    for (int x = 0; x < width; ++x) {
      for (int r = 0; r < kPrecinctLines; ++r) col[r] = lines[r][x];
      dwt53_analyze_1d(col, lo, hi);
      vlow[0][x] = lo[0];
      vlow[1][x] = lo[1];
      vhigh[0][x] = hi[0];
      vhigh[1][x] = hi[1];
    }
  }

  // Horizontal level 1: v-low rows feed LL1/HL1, v-high rows feed LH1/HH1.
  std::array<Row, 2> ll1;
  {
    Row lo, hi;
    for (int r = 0; r < 2; ++r) {
      dwt53_analyze_1d(vlow[r], lo, hi);
      ll1[r] = lo;
      encode_row(hi, out.bands[kHL1], r);
      dwt53_analyze_1d(vhigh[r], lo, hi);
      encode_row(lo, out.bands[kLH1], r);
      encode_row(hi, out.bands[kHH1], r);
    }
  }

  // Level 2 on LL1: vertical split of its two rows, then horizontal split.
  Row srow(ll1[0].size()), drow(ll1[0].size());
  {
    std::vector<std::int32_t> col(2), lo, hi;
    for (std::size_t x = 0; x < ll1[0].size(); ++x) {
      col[0] = ll1[0][x];
      col[1] = ll1[1][x];
      dwt53_analyze_1d(col, lo, hi);
      srow[x] = lo[0];
      drow[x] = hi[0];
    }
  }
  Row ll2, lo, hi;
  dwt53_analyze_1d(srow, ll2, hi);
  encode_row(hi, out.bands[kHL2], 0);
  dwt53_analyze_1d(drow, lo, hi);
  encode_row(lo, out.bands[kLH2], 0);
  encode_row(hi, out.bands[kHH2], 0);

  // Horizontal levels 3..5 down the lowpass chain.
  Row ll3, ll4, ll5;
  dwt53_analyze_1d(ll2, ll3, hi);
  encode_row(hi, out.bands[kHL3], 0);
  dwt53_analyze_1d(ll3, ll4, hi);
  encode_row(hi, out.bands[kHL4], 0);
  dwt53_analyze_1d(ll4, ll5, hi);
  encode_row(hi, out.bands[kHL5], 0);
  encode_row(ll5, out.bands[kLL5], 0);

  return out;
}

PrecinctLines reconstruct_precinct(const PrecinctCoeffs& coeffs) {
  const int width = coeffs.bands[kHL1].shape.width * 2;
  PrecinctGeometry geom = PrecinctGeometry::for_width(width);
  for (int i = 0; i < kBandCount; ++i)
    if (coeffs.bands[i].shape.width != geom.bands[i].width ||
        coeffs.bands[i].shape.height != geom.bands[i].height ||
        static_cast<int>(coeffs.bands[i].data.size()) != geom.bands[i].size())
      throw InvariantError("reconstruct_precinct: inconsistent band shapes");

  // Lowpass chain back up: levels 5..3.
  Row ll4 = dwt53_synthesize_1d(decode_row(coeffs.bands[kLL5], 0), decode_row(coeffs.bands[kHL5], 0));
  Row ll3 = dwt53_synthesize_1d(ll4, decode_row(coeffs.bands[kHL4], 0));
  Row ll2 = dwt53_synthesize_1d(ll3, decode_row(coeffs.bands[kHL3], 0));

  // Level 2 inverse: horizontal, then the vertical pair.
  Row srow = dwt53_synthesize_1d(ll2, decode_row(coeffs.bands[kHL2], 0));
  Row drow = dwt53_synthesize_1d(decode_row(coeffs.bands[kLH2], 0), decode_row(coeffs.bands[kHH2], 0));
  std::array<Row, 2> ll1{Row(srow.size()), Row(srow.size())};
  for (std::size_t x = 0; x < srow.size(); ++x) {
    const auto col = dwt53_synthesize_1d(std::array{srow[x]}, std::array{drow[x]});
    ll1[0][x] = col[0];
    ll1[1][x] = col[1];
  }

  // Level 1 inverse: horizontal rows, then the vertical 4-line merge.
  std::array<Row, 2> vlow, vhigh;
  for (int r = 0; r < 2; ++r) {
    vlow[r] = dwt53_synthesize_1d(ll1[r], decode_row(coeffs.bands[kHL1], r));
    vhigh[r] = dwt53_synthesize_1d(decode_row(coeffs.bands[kLH1], r),
                                   decode_row(coeffs.bands[kHH1], r));
  }
  PrecinctLines lines;
  for (auto& line : lines) line.resize(width);
  for (int x = 0; x < width; ++x) {
    const auto col = dwt53_synthesize_1d(std::array{vlow[0][x], vlow[1][x]},
                                         std::array{vhigh[0][x], vhigh[1][x]});
    for (int r = 0; r < kPrecinctLines; ++r) lines[r][x] = col[r];
  }
  return lines;
}

}  // namespace ipcdv
