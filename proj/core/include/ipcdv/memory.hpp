#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ipcdv/grouping.hpp"

namespace ipcdv {

inline constexpr int kCoeffsPerWord = 2;  // two 32-bit coefficients per 64-bit word

struct DramConfig {
  int word_bits = 64;
  int burst_words = 8;
  int cmd_overhead_cycles = 20;
  int cycles_per_word = 1;

  void validate() const;
};

enum class Bank { original, reconstructed };
enum class Layout { method0 = 0, method1 = 1 };

// Per-group block lengths and strides for address generation. Rebuilt
// whenever the search moves to a precinct of different geometry.
struct TlbEntry {
  std::vector<int> block_lengths;         // coefficients per band block, canonical order
  int unit_coeffs = 0;                    // sum of block lengths
  std::int64_t unit_stride_words = 0;     // ceil(unit_coeffs / 2)
  std::int64_t region_offset_words = 0;   // group region start within a precinct region
};

struct TlbTable {
  int width = 0;
  std::array<TlbEntry, kNumGroups> groups{};
};

TlbTable build_tlb(const PrecinctGeometry& geom);

// Words of one (precinct, component) region; identical under both layouts.
std::int64_t region_words(const PrecinctGeometry& geom);

// Word base of a (precinct, component) region within its bank.
std::int64_t region_base_words(int precinct, int component, int num_components,
                               const PrecinctGeometry& geom);

// Method 0 (precinct-aligned): coefficient slot within its region, canonical
// band order, bands row-major.
std::int64_t layout0_slot(const PrecinctGeometry& geom, Band band, int row, int col);

struct CoeffAddress {
  std::int64_t word = 0;
  int half = 0;  // 0 = low 32 bits of the word
};

CoeffAddress layout0_address(int precinct, int component, int num_components,
                             const PrecinctGeometry& geom, Band band, int row, int col);

// Method 1 (group-aligned): slot of the index_in_unit-th coefficient of a
// unit entry (block scan order).
std::int64_t layout1_slot(const TlbTable& tlb, const PrecinctGeometry& geom, int group,
                          int unit, int index_in_unit);

struct Layout1Entry {
  std::int64_t address_words = 0;  // word base of the unit entry within the bank
  std::int64_t length_words = 0;   // the group's unit stride
};

Layout1Entry layout1_entry(int precinct, int component, int num_components, int group,
                           int unit, const TlbTable& tlb, const PrecinctGeometry& geom);

// One (precinct, component) region as packed little-end-first 64-bit words.
std::vector<std::uint64_t> serialize_precinct(const PrecinctCoeffs& coeffs, Layout layout);

PrecinctCoeffs deserialize_precinct(std::span<const std::uint64_t> image, Layout layout,
                                    const PrecinctGeometry& geom, int precinct_index = 0,
                                    int component = 0);

// Reads one unit's coefficients out of a region image in block scan order.
std::vector<SignMag32> gather_unit(std::span<const std::uint64_t> image, Layout layout,
                                   const TlbTable& tlb, const PrecinctGeometry& geom,
                                   int group, int unit);

struct BurstCommand {
  Bank bank = Bank::original;
  std::int64_t address = 0;  // word index within the bank
  std::int64_t length = 0;   // words

  friend bool operator==(const BurstCommand&, const BurstCommand&) = default;
};

// Commands that fetch one IPC unit. Method 1 issues exactly one command per
// unit; Method 0 issues one command per contiguous word run of the unit's
// block rows (coalesced where runs touch).
std::vector<BurstCommand> cmd_generate(int group, int unit, Layout layout,
                                       const TlbTable& tlb, const PrecinctGeometry& geom,
                                       int precinct, int component, int num_components,
                                       Bank bank);

struct TransferStats {
  std::int64_t commands = 0;
  std::int64_t words = 0;  // burst-aligned words moved
  std::int64_t bursts = 0;
  std::int64_t cycles = 0;

  TransferStats& operator+=(const TransferStats& o);
  friend bool operator==(const TransferStats&, const TransferStats&) = default;
};

// cycles = sum per command of cmd_overhead + (length rounded up to whole
// bursts) * cycles_per_word.
TransferStats simulate_transfer(std::span<const BurstCommand> commands,
                                const DramConfig& cfg);

// Word-exact little-endian image dumps for cross-implementation comparison.
void write_image_file(const std::filesystem::path& path,
                      std::span<const std::uint64_t> words);
std::vector<std::uint64_t> read_image_file(const std::filesystem::path& path);

}  // namespace ipcdv
