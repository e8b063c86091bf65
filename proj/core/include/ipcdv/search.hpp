#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ipcdv/pipeline.hpp"

namespace ipcdv {

struct ReconMode {
  enum class Kind { passthrough, quantize };
  Kind kind = Kind::passthrough;
  int shift = 0;  // quantize: magnitude >> shift << shift

  friend bool operator==(const ReconMode&, const ReconMode&) = default;
};

struct SearchConfig {
  int dx_min = -256, dx_max = 256, dx_step = 32;
  int dy_min = -16, dy_max = 0, dy_step = 4;
  ReconMode recon;
  int dv_signal_bits = 16;  // flat DV signalling cost per unit per group

  void validate() const;
};

// Every grid candidate whose referenced strip stays inside the frame:
// dy < 0 rows may point anywhere reconstructed, the dy = 0 row only at
// strictly-left units. (0,0) is excluded. Raster order: dy outer, dx inner,
// both ascending.
std::vector<DisplacementVector> candidate_window(const SearchConfig& cfg, int precinct_index,
                                                 int unit_index, int units);

// Reconstructed precinct history (luma). Precincts enter in index order.
class ReconStore {
 public:
  explicit ReconStore(PrecinctGeometry geom) : geom_(std::move(geom)) {}

  const PrecinctGeometry& geometry() const { return geom_; }
  int size() const { return static_cast<int>(precincts_.size()); }
  bool has(int precinct) const {
    return precinct >= 0 && precinct < static_cast<int>(precincts_.size());
  }
  const PrecinctCoeffs& get(int precinct) const;
  void push(PrecinctCoeffs coeffs);

 private:
  PrecinctGeometry geom_;
  std::vector<PrecinctCoeffs> precincts_;
};

// passthrough returns the input; quantize clears the low `shift` magnitude
// bits of every coefficient.
PrecinctCoeffs apply_recon_mode(const PrecinctCoeffs& coeffs, const ReconMode& mode);

// Coefficients of one unit in block scan order.
UnitBuffer extract_unit(const PrecinctCoeffs& coeffs, const UnitDescriptor& desc);

// Reads the co-indexed blocks displaced by dv: same bands, column offset
// dx >> level_h, precinct offset dy / 4. Throws when the referenced precinct
// is not in the store or the columns leave the frame.
UnitBuffer fetch_reference(const ReconStore& store, const UnitDescriptor& desc, int precinct,
                           DisplacementVector dv);

struct UnitDecision {
  int unit_index = 0;
  int group = 0;
  std::optional<DisplacementVector> best_dv;
  BitCost ipc_bits = 0;  // meaningful when best_dv is set
  BitCost orig_bits = 0;
  enum class Mode { IPC, ORIG } mode = Mode::ORIG;
};

// One decision per group. Candidates whose referenced precinct is not in the
// store are skipped; with no usable candidate the unit codes as ORIG with a
// null DV.
std::vector<UnitDecision> search_unit(const PrecinctCoeffs& orig, const ReconStore& store,
                                      const SearchConfig& cfg, const ParamsTable& table,
                                      int precinct, int unit);

struct PrecinctReport {
  int precinct = 0;
  std::vector<UnitDecision> decisions;  // unit-major, group-minor
  std::uint64_t orig_bits_total = 0;
  std::uint64_t coded_bits_total = 0;  // sum of min(orig, ipc + dv_signal)
  int ipc_decisions = 0;
  int eligible_decisions = 0;  // decisions that had a usable candidate
};

// Searches every unit against the current history snapshot (units are
// independent, so they may be spread over `threads` workers without changing
// the result), then pushes this precinct's reconstruction into the store.
PrecinctReport search_precinct(const PrecinctCoeffs& orig, ReconStore& store,
                               const SearchConfig& cfg, const ParamsTable& table,
                               int threads = 1);

// Full sweep in precinct order over an already-decomposed luma plane.
std::vector<PrecinctReport> search_image(std::span<const PrecinctCoeffs> orig_precincts,
                                         const SearchConfig& cfg, int threads = 1);

}  // namespace ipcdv
