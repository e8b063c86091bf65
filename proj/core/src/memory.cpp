#include "ipcdv/memory.hpp"

#include <fstream>
#include <string>

namespace ipcdv {

void DramConfig::validate() const {
  if (word_bits != 64)
    throw ConfigError("only 64-bit DRAM words are modeled");
  if (burst_words <= 0 || cmd_overhead_cycles < 0 || cycles_per_word <= 0)
    throw ConfigError("DRAM timing parameters must be positive");
}

TlbTable build_tlb(const PrecinctGeometry& geom) {
  TlbTable tlb;
  tlb.width = geom.width;
  const int units = geom.units();
  std::int64_t offset = 0;
  for (int g = 0; g < kNumGroups; ++g) {
    TlbEntry& entry = tlb.groups[g];
    const UnitDescriptor desc = unit_blocks(g, 0, geom);
    for (const UnitBlock& block : desc.blocks) entry.block_lengths.push_back(block.size());
    entry.unit_coeffs = desc.total_coeffs;
    entry.unit_stride_words = (entry.unit_coeffs + kCoeffsPerWord - 1) / kCoeffsPerWord;
    entry.region_offset_words = offset;
    offset += entry.unit_stride_words * units;
  }
  return tlb;
}

std::int64_t region_words(const PrecinctGeometry& geom) {
  return static_cast<std::int64_t>(geom.coeffs_per_component()) / kCoeffsPerWord;
}

std::int64_t region_base_words(int precinct, int component, int num_components,
                               const PrecinctGeometry& geom) {
  if (precinct < 0) throw InvariantError("negative precinct index");
  if (component < 0 || component >= num_components)
    throw InvariantError("component index out of range");
  return (static_cast<std::int64_t>(precinct) * num_components + component) *
         region_words(geom);
}

namespace {

std::int64_t band_offset_slots(const PrecinctGeometry& geom, Band band) {
  std::int64_t offset = 0;
  for (int i = 0; i < static_cast<int>(band); ++i) offset += geom.bands[i].size();
  return offset;
}

void check_tlb(const TlbTable& tlb, const PrecinctGeometry& geom) {
  if (tlb.width != geom.width)
    throw InvariantError("stale TLB: built for width " + std::to_string(tlb.width) +
                         ", geometry width " + std::to_string(geom.width));
}

std::uint32_t image_slot_get(std::span<const std::uint64_t> image, std::int64_t slot) {
  const std::uint64_t word = image[static_cast<std::size_t>(slot / kCoeffsPerWord)];
  return static_cast<std::uint32_t>(slot % kCoeffsPerWord == 0 ? word : word >> 32);
}

void image_slot_set(std::span<std::uint64_t> image, std::int64_t slot, std::uint32_t v) {
  std::uint64_t& word = image[static_cast<std::size_t>(slot / kCoeffsPerWord)];
  if (slot % kCoeffsPerWord == 0)
    word = (word & 0xffffffff00000000ull) | v;
  else
    word = (word & 0x00000000ffffffffull) | (static_cast<std::uint64_t>(v) << 32);
}

// Visits the coefficients of one unit in block scan order together with
// their Method-0 slots.
template <typename Fn>
void for_unit_slots_m0(const PrecinctGeometry& geom, const UnitDescriptor& desc, Fn&& fn) {
  for (const UnitBlock& block : desc.blocks) {
    const std::int64_t base = band_offset_slots(geom, block.band);
    const int band_width = geom.shape(block.band).width;
    for (int r = block.row_begin; r < block.row_end; ++r)
      for (int c = block.col_begin; c < block.col_end; ++c)
        fn(base + static_cast<std::int64_t>(r) * band_width + c);
  }
}

}  // namespace

std::int64_t layout0_slot(const PrecinctGeometry& geom, Band band, int row, int col) {
  const BandShape& shape = geom.shape(band);
  if (row < 0 || row >= shape.height || col < 0 || col >= shape.width)
    throw InvariantError(std::string(band_name(band)) + ": position (" + std::to_string(row) +
                         "," + std::to_string(col) + ") out of range");
  return band_offset_slots(geom, band) + static_cast<std::int64_t>(row) * shape.width + col;
}

CoeffAddress layout0_address(int precinct, int component, int num_components,
                             const PrecinctGeometry& geom, Band band, int row, int col) {
  const std::int64_t slot = layout0_slot(geom, band, row, col);
  const std::int64_t base = region_base_words(precinct, component, num_components, geom);
  return CoeffAddress{base + slot / kCoeffsPerWord, static_cast<int>(slot % kCoeffsPerWord)};
}

std::int64_t layout1_slot(const TlbTable& tlb, const PrecinctGeometry& geom, int group,
                          int unit, int index_in_unit) {
  check_tlb(tlb, geom);
  const TlbEntry& entry = tlb.groups[static_cast<std::size_t>(group)];
  if (unit < 0 || unit >= geom.units())
    throw InvariantError("unit index out of range");
  if (index_in_unit < 0 || index_in_unit >= entry.unit_coeffs)
    throw InvariantError("coefficient index out of range for unit entry");
  return (entry.region_offset_words + static_cast<std::int64_t>(unit) * entry.unit_stride_words) *
             kCoeffsPerWord +
         index_in_unit;
}

Layout1Entry layout1_entry(int precinct, int component, int num_components, int group,
                           int unit, const TlbTable& tlb, const PrecinctGeometry& geom) {
  check_tlb(tlb, geom);
  const TlbEntry& entry = tlb.groups[static_cast<std::size_t>(group)];
  if (unit < 0 || unit >= geom.units())
    throw InvariantError("unit index out of range");
  const std::int64_t base = region_base_words(precinct, component, num_components, geom);
  return Layout1Entry{
      base + entry.region_offset_words + static_cast<std::int64_t>(unit) * entry.unit_stride_words,
      entry.unit_stride_words};
}

std::vector<std::uint64_t> serialize_precinct(const PrecinctCoeffs& coeffs, Layout layout) {
  const PrecinctGeometry geom = PrecinctGeometry::for_width(coeffs.bands[kHL1].shape.width * 2);
  std::vector<std::uint64_t> image(static_cast<std::size_t>(region_words(geom)), 0);
  if (layout == Layout::method0) {
    for (int i = 0; i < kBandCount; ++i) {
      const BandGrid& grid = coeffs.bands[i];
      const std::int64_t base = band_offset_slots(geom, static_cast<Band>(i));
      for (std::size_t k = 0; k < grid.data.size(); ++k)
        image_slot_set(image, base + static_cast<std::int64_t>(k), grid.data[k].raw);
    }
  } else {
    const TlbTable tlb = build_tlb(geom);
    for (int g = 0; g < kNumGroups; ++g)
      for (int u = 0; u < geom.units(); ++u) {
        const UnitDescriptor desc = unit_blocks(g, u, geom);
        int index = 0;
        for (const UnitBlock& block : desc.blocks) {
          const BandGrid& grid = coeffs.bands[block.band];
          for (int r = block.row_begin; r < block.row_end; ++r)
            for (int c = block.col_begin; c < block.col_end; ++c)
              image_slot_set(image, layout1_slot(tlb, geom, g, u, index++),
                             grid.at(r, c).raw);
        }
      }
  }
  return image;
}

PrecinctCoeffs deserialize_precinct(std::span<const std::uint64_t> image, Layout layout,
                                    const PrecinctGeometry& geom, int precinct_index,
                                    int component) {
  if (static_cast<std::int64_t>(image.size()) != region_words(geom))
    throw InvariantError("image size mismatch: got " + std::to_string(image.size()) +
                         " words, expected " + std::to_string(region_words(geom)));
  PrecinctCoeffs coeffs = make_precinct_coeffs(geom, precinct_index, component);
  if (layout == Layout::method0) {
    for (int i = 0; i < kBandCount; ++i) {
      BandGrid& grid = coeffs.bands[i];
      const std::int64_t base = band_offset_slots(geom, static_cast<Band>(i));
      for (std::size_t k = 0; k < grid.data.size(); ++k)
        grid.data[k].raw = image_slot_get(image, base + static_cast<std::int64_t>(k));
    }
  } else {
    const TlbTable tlb = build_tlb(geom);
    for (int g = 0; g < kNumGroups; ++g)
      for (int u = 0; u < geom.units(); ++u) {
        const UnitDescriptor desc = unit_blocks(g, u, geom);
        int index = 0;
        for (const UnitBlock& block : desc.blocks) {
          BandGrid& grid = coeffs.bands[block.band];
          for (int r = block.row_begin; r < block.row_end; ++r)
            for (int c = block.col_begin; c < block.col_end; ++c)
              grid.set(r, c, SignMag32{image_slot_get(
                                 image, layout1_slot(tlb, geom, g, u, index++))});
        }
      }
  }
  return coeffs;
}

std::vector<SignMag32> gather_unit(std::span<const std::uint64_t> image, Layout layout,
                                   const TlbTable& tlb, const PrecinctGeometry& geom,
                                   int group, int unit) {
  if (static_cast<std::int64_t>(image.size()) != region_words(geom))
    throw InvariantError("image size mismatch");
  std::vector<SignMag32> out;
  const UnitDescriptor desc = unit_blocks(group, unit, geom);
  out.reserve(static_cast<std::size_t>(desc.total_coeffs));
  if (layout == Layout::method0) {
    for_unit_slots_m0(geom, desc, [&](std::int64_t slot) {
      out.push_back(SignMag32{image_slot_get(image, slot)});
    });
  } else {
    for (int i = 0; i < desc.total_coeffs; ++i)
      out.push_back(SignMag32{image_slot_get(image, layout1_slot(tlb, geom, group, unit, i))});
  }
  return out;
}

std::vector<BurstCommand> cmd_generate(int group, int unit, Layout layout,
                                       const TlbTable& tlb, const PrecinctGeometry& geom,
                                       int precinct, int component, int num_components,
                                       Bank bank) {
  check_tlb(tlb, geom);
  const std::int64_t base = region_base_words(precinct, component, num_components, geom);
  std::vector<BurstCommand> commands;
  if (layout == Layout::method1) {
    const Layout1Entry entry =
        layout1_entry(precinct, component, num_components, group, unit, tlb, geom);
    commands.push_back(BurstCommand{bank, entry.address_words, entry.length_words});
    return commands;
  }
  // Method 0: one command per contiguous word run of the unit's block rows.
  const UnitDescriptor desc = unit_blocks(group, unit, geom);
  std::int64_t run_begin = -1, run_end = -1;  // slot range of the open run
  auto flush = [&] {
    if (run_begin < 0) return;
    const std::int64_t word_begin = run_begin / kCoeffsPerWord;
    const std::int64_t word_end = (run_end + kCoeffsPerWord - 1) / kCoeffsPerWord;
    commands.push_back(BurstCommand{bank, base + word_begin, word_end - word_begin});
  };
  for (const UnitBlock& block : desc.blocks) {
    const std::int64_t band_base = band_offset_slots(geom, block.band);
    const int band_width = geom.shape(block.band).width;
    for (int r = block.row_begin; r < block.row_end; ++r) {
      const std::int64_t begin = band_base + static_cast<std::int64_t>(r) * band_width +
                                 block.col_begin;
      const std::int64_t end = begin + block.cols();
      if (run_begin >= 0 && begin == run_end) {
        run_end = end;  // slot-contiguous with the previous row: coalesce
      } else {
        flush();
        run_begin = begin;
        run_end = end;
      }
    }
  }
  flush();
  return commands;
}

TransferStats& TransferStats::operator+=(const TransferStats& o) {
  commands += o.commands;
  words += o.words;
  bursts += o.bursts;
  cycles += o.cycles;
  return *this;
}

TransferStats simulate_transfer(std::span<const BurstCommand> commands,
                                const DramConfig& cfg) {
  cfg.validate();
  TransferStats stats;
  for (const BurstCommand& cmd : commands) {
    if (cmd.length < 1) throw InvariantError("burst command with non-positive length");
    const std::int64_t bursts = (cmd.length + cfg.burst_words - 1) / cfg.burst_words;
    const std::int64_t moved = bursts * cfg.burst_words;
    stats.commands += 1;
    stats.bursts += bursts;
    stats.words += moved;
    stats.cycles += cfg.cmd_overhead_cycles + moved * cfg.cycles_per_word;
  }
  return stats;
}

void write_image_file(const std::filesystem::path& path,
                      std::span<const std::uint64_t> words) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (std::uint64_t w : words) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(w >> (8 * i));
    out.write(reinterpret_cast<const char*>(bytes), 8);
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::uint64_t> read_image_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint64_t> words;
  unsigned char bytes[8];
  while (in.read(reinterpret_cast<char*>(bytes), 8)) {
    std::uint64_t w = 0;
    for (int i = 0; i < 8; ++i) w |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    words.push_back(w);
  }
  if (in.gcount() != 0) throw IoError(path.string() + ": trailing bytes, not a word-exact image");
  return words;
}

}  // namespace ipcdv
