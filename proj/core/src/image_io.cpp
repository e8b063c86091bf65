#include "ipcdv/image_io.hpp"

#include <fstream>

namespace ipcdv {

namespace {

struct PnmParser {
  std::span<const unsigned char> bytes;
  std::size_t pos = 0;
  const std::string& origin;

  bool eof() const { return pos >= bytes.size(); }

  void skip_space_and_comments() {
    while (!eof()) {
      const unsigned char c = bytes[pos];
      if (c == '#') {
        while (!eof() && bytes[pos] != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos;
      } else {
        break;
      }
    }
  }

  int read_number(const char* what) {
    skip_space_and_comments();
    if (eof() || bytes[pos] < '0' || bytes[pos] > '9')
      throw IoError(origin + ": malformed header, expected " + std::string(what) +
                    " at byte offset " + std::to_string(pos));
    long v = 0;
    while (!eof() && bytes[pos] >= '0' && bytes[pos] <= '9') {
      v = v * 10 + (bytes[pos] - '0');
      if (v > 1 << 24) throw IoError(origin + ": unreasonable " + std::string(what));
      ++pos;
    }
    return static_cast<int>(v);
  }
};

}  // namespace

PlanarImage parse_pnm(std::span<const unsigned char> bytes, const std::string& origin) {
  PnmParser p{bytes, 0, origin};
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
    throw IoError(origin + ": malformed header, not a binary PGM (P5) or PPM (P6) file");
  const bool color = bytes[1] == '6';
  p.pos = 2;

  const int width = p.read_number("width");
  const int height = p.read_number("height");
  const int maxval = p.read_number("maxval");
  if (maxval != 255)
    throw IoError(origin + ": unsupported maxval " + std::to_string(maxval) +
                  " (only 255 is supported)");
  if (p.eof() || !(bytes[p.pos] == ' ' || bytes[p.pos] == '\t' || bytes[p.pos] == '\r' ||
                   bytes[p.pos] == '\n'))
    throw IoError(origin + ": malformed header, missing whitespace after maxval");
  ++p.pos;

  const std::size_t channels = color ? 3 : 1;
  const std::size_t need =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * channels;
  if (bytes.size() - p.pos < need)
    throw IoError(origin + ": truncated pixel data, expected " + std::to_string(need) +
                  " bytes from byte offset " + std::to_string(p.pos) + " but the file ends at " +
                  std::to_string(bytes.size()));

  PlanarImage image;
  image.width = width;
  image.height = height;
  const std::size_t pixels = static_cast<std::size_t>(width) * height;
  if (!color) {
    image.planes.assign(1, std::vector<std::int32_t>(pixels));
    for (std::size_t i = 0; i < pixels; ++i)
      image.planes[0][i] = bytes[p.pos + i];
  } else {
    image.planes.assign(3, std::vector<std::int32_t>(pixels));
    for (std::size_t i = 0; i < pixels; ++i) {
      const PixelTriple rgb{bytes[p.pos + 3 * i], bytes[p.pos + 3 * i + 1],
                            bytes[p.pos + 3 * i + 2]};
      const YCbCr c = rct_forward(rgb);
      image.planes[0][i] = c.y;
      image.planes[1][i] = c.cb;
      image.planes[2][i] = c.cr;
    }
  }
  return image;
}

PlanarImage ingest_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return parse_pnm(bytes, path.string());
}

PrecinctLines PaddedPlanes::precinct_lines(int plane, int precinct) const {
  if (plane < 0 || plane >= components() || precinct < 0 || precinct >= precincts())
    throw InvariantError("precinct_lines: indices out of range");
  PrecinctLines lines;
  const auto& data = planes[static_cast<std::size_t>(plane)];
  for (int r = 0; r < kPrecinctLines; ++r) {
    const std::size_t row = static_cast<std::size_t>(precinct) * kPrecinctLines + r;
    const auto begin = data.begin() + static_cast<std::ptrdiff_t>(row * padded_width);
    lines[r].assign(begin, begin + padded_width);
  }
  return lines;
}

PaddedPlanes pad_to_precincts(const PlanarImage& image) {
  PaddedPlanes out;
  out.orig_width = image.width;
  out.orig_height = image.height;
  if (image.width == 0 || image.height == 0) return out;  // zero-sized: no precincts

  const auto round_up = [](int v, int m) { return (v + m - 1) / m * m; };
  out.padded_width = round_up(image.width, kUnitPixels);
  out.padded_height = round_up(image.height, kPrecinctLines);

  for (const auto& plane : image.planes) {
    std::vector<std::int32_t> padded(static_cast<std::size_t>(out.padded_width) *
                                     out.padded_height);
    for (int y = 0; y < out.padded_height; ++y) {
      const int sy = std::min(y, image.height - 1);
      for (int x = 0; x < out.padded_width; ++x) {
        const int sx = std::min(x, image.width - 1);
        padded[static_cast<std::size_t>(y) * out.padded_width + x] =
            plane[static_cast<std::size_t>(sy) * image.width + sx];
      }
    }
    out.planes.push_back(std::move(padded));
  }
  return out;
}

std::vector<PrecinctCoeffs> decompose_plane(const PaddedPlanes& padded, int plane,
                                            int component) {
  std::vector<PrecinctCoeffs> precincts;
  precincts.reserve(static_cast<std::size_t>(padded.precincts()));
  for (int p = 0; p < padded.precincts(); ++p)
    precincts.push_back(decompose_precinct(padded.precinct_lines(plane, p), p, component));
  return precincts;
}

}  // namespace ipcdv
