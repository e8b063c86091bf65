#pragma once

#include <filesystem>
#include <string>

#include "ipcdv/image_io.hpp"
#include "ipcdv/memory.hpp"
#include "ipcdv/search.hpp"

namespace ipcdv {

inline constexpr int kMethodBoth = 2;

struct RunConfig {
  std::filesystem::path input;
  int method = kMethodBoth;  // 0, 1, or kMethodBoth
  SearchConfig search;
  DramConfig dram;
  std::filesystem::path out_dir = ".";
  int threads = 1;
  bool dump_images = false;
  int trace_precinct = 0;
  int trace_group = -1;  // set by --trace group:unit
  int trace_unit = -1;

  void validate() const;
};

// Fixed output names inside out_dir.
inline constexpr const char* kSearchCsvName = "search_units.csv";
inline constexpr const char* kSearchJsonName = "search_summary.json";
inline constexpr const char* kMembenchCsvName = "membench.csv";
inline constexpr const char* kTraceName = "trace.txt";

struct SearchSummary {
  int width = 0, height = 0, components = 0;
  int precincts = 0;
  std::uint64_t total_decisions = 0;
  std::uint64_t eligible_decisions = 0;
  std::uint64_t ipc_decisions = 0;
  std::uint64_t orig_bits_total = 0;
  std::uint64_t coded_bits_total = 0;
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
};

// Full-image DV search over the luma plane; writes the per-unit CSV and the
// aggregate JSON. Outputs are deterministic functions of (input bytes, flags).
SearchSummary cmd_search(const RunConfig& cfg);

struct MethodStats {
  TransferStats stats;
  double pixels_per_cycle = 0.0;
  double cycle_ratio_vs_method0 = 1.0;
};

struct MembenchSummary {
  bool empty = false;  // zero-sized input
  MethodStats method0, method1;
  std::filesystem::path csv_path;
};

// Models the DRAM traffic of a whole-image search sweep (original unit fetch
// plus one reference fetch per usable candidate, all components) under both
// memory organizations.
MembenchSummary cmd_membench(const RunConfig& cfg);

struct TraceSummary {
  int candidates = 0;
  int cycles = 0;
  std::optional<SearchOutcome> outcome;  // empty when no candidate was usable
  std::filesystem::path trace_path;
};

// Cycle-by-cycle pipeline trace of one (precinct, group, unit) search.
TraceSummary cmd_trace(const RunConfig& cfg);

}  // namespace ipcdv
