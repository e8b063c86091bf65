#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ipcdv/residual.hpp"

namespace ipcdv {

struct DisplacementVector {
  int dx = 0;  // pixels, multiple of 32
  int dy = 0;  // pixels, multiple of 4; <= 0 under causality

  friend bool operator==(const DisplacementVector&, const DisplacementVector&) = default;
};

std::string to_string(DisplacementVector dv);

using BitCost = std::uint32_t;

inline constexpr int kQuadSize = 4;
inline constexpr BitCost kGcliSignalBitsPerQuad = 4;

// Number of significant bit planes (0 for zero).
int gcli_bit_length(std::uint32_t v);

int quad_count(int grp_size);

// Stage-1 output: OR of each quad of 4 consecutive magnitudes in block scan
// order (zero-padded tail), plus the OR of everything.
struct OrMask {
  std::vector<std::uint32_t> or_idx;
  std::uint32_t or_all = 0;
};

OrMask stage1_get_or_mask(std::span<const SignMag32> data, const GroupParams& params);

// Stage-2 cost model: 4 bits per significant plane per quad plus a flat
// 4-bit GCLI signal per quad. An all-zero or_all short-circuits the scan
// without changing the value.
BitCost stage2_cal_gcli(const OrMask& mask, const GroupParams& params);

// Convenience: stage 1 + stage 2 over a coefficient buffer.
BitCost unit_bit_cost(std::span<const SignMag32> data, const GroupParams& params);

// Stage-3 registers. bits_best starts strictly above the cost ceiling and the
// DV register starts null; only a strictly smaller BitsTest updates them, so
// the earliest candidate wins ties.
struct CompareState {
  BitCost bits_best = 0xffffffffu;
  std::optional<DisplacementVector> best_dv;
};

void stage3_compare(BitCost bits_test, DisplacementVector dv_d2, CompareState& state);

struct ParamsTable {
  std::array<GroupParams, kNumGroups> groups{};

  static ParamsTable for_geometry(const PrecinctGeometry& geom);
  const GroupParams& of(int group) const;
};

struct Stage0Input {
  int group = 0;
  UnitBuffer residuals;
  DisplacementVector dv;
};

struct Stage0Output {
  GroupParams params;
  std::vector<SignMag32> data_buf;
  DisplacementVector dv;
};

// Stage 0: CalIdx/CalSize/CalWidth parameter generation plus the data load.
Stage0Output stage0_load(const Stage0Input& in, const ParamsTable& table);

// One trace line: per-stage occupancy (as the candidate's DV) plus the
// register file after the cycle.
struct TraceRecord {
  std::uint64_t cycle = 0;
  std::optional<DisplacementVector> s0, s1, s2, s3;
  std::uint32_t or_digest = 0;  // FNV-1a over the OrIdx words
  std::uint32_t or_all = 0;
  std::optional<DisplacementVector> dv_d1, dv_d2;
  std::optional<BitCost> bits_test;
  BitCost bits_best = 0xffffffffu;
  std::optional<DisplacementVector> best_dv;
};

std::string format_trace_record(const TraceRecord& rec);

// What stage 3 produced in the previous cycle.
struct CycleOutput {
  BitCost bits_test = 0;
  DisplacementVector dv;
  BitCost bits_best = 0;
  std::optional<DisplacementVector> best_dv;
};

// Cycle-stepped model of the four-stage comparison engine. Each step advances
// every stage by one cycle; a result becomes visible exactly four cycles
// after its load, and bubbles simply drain through.
class DvPipeline {
 public:
  explicit DvPipeline(ParamsTable table, std::vector<TraceRecord>* trace = nullptr);

  std::optional<CycleOutput> step(std::optional<Stage0Input> input);
  bool busy() const;
  std::uint64_t cycle() const { return cycle_; }
  const CompareState& compare_state() const { return compare_; }

 private:
  struct Latch0 {
    GroupParams params;
    std::vector<SignMag32> data;
    DisplacementVector dv;
  };
  struct Latch1 {
    OrMask mask;
    DisplacementVector dv_d1;
    GroupParams params;
  };
  struct Latch2 {
    BitCost bits_test = 0;
    DisplacementVector dv_d2;
  };

  ParamsTable table_;
  std::vector<TraceRecord>* trace_;
  std::optional<Latch0> l0_;
  std::optional<Latch1> l1_;
  std::optional<Latch2> l2_;
  std::optional<CycleOutput> out_;
  CompareState compare_;
  std::uint64_t cycle_ = 0;
};

struct SearchOutcome {
  DisplacementVector best_dv;
  BitCost best_bits = 0;

  friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;
};

// Streams every candidate through the cycle-stepped pipeline and drains it.
// residuals[i] belongs to dvs[i]; at least one candidate is required.
SearchOutcome run_candidates(int group, std::span<const UnitBuffer> residuals,
                             std::span<const DisplacementVector> dvs,
                             const ParamsTable& table,
                             std::vector<TraceRecord>* trace = nullptr);

// Brute-force reference: recomputes every candidate's cost straight from the
// magnitudes (per-quad GCLI as the max bit length over the quad, no OR mask,
// no pipeline) and folds with strict-min / first-wins.
SearchOutcome oracle_best_dv(std::span<const UnitBuffer> residuals,
                             std::span<const DisplacementVector> dvs);

}  // namespace ipcdv
