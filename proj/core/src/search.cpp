#include "ipcdv/search.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace ipcdv {

void SearchConfig::validate() const {
  if (dx_step <= 0 || dx_step % kUnitPixels != 0)
    throw ConfigError("dx step must be a positive multiple of 32");
  if (dy_step <= 0 || dy_step % kPrecinctLines != 0)
    throw ConfigError("dy step must be a positive multiple of 4");
  if (dx_min > dx_max || dy_min > dy_max) throw ConfigError("empty search range");
  if (dx_min % dx_step != 0 || (dx_max - dx_min) % dx_step != 0)
    throw ConfigError("dx range endpoints must be multiples of the step");
  if (dy_min % dy_step != 0 || (dy_max - dy_min) % dy_step != 0)
    throw ConfigError("dy range endpoints must be multiples of the step");
  if (dy_max > 0) throw ConfigError("dy must stay non-positive (causal references only)");
  if (dv_signal_bits < 0) throw ConfigError("dv_signal_bits must be non-negative");
  if (recon.kind == ReconMode::Kind::quantize && (recon.shift < 0 || recon.shift > 30))
    throw ConfigError("quantizer shift must lie in [0, 30]");
}

std::vector<DisplacementVector> candidate_window(const SearchConfig& cfg, int precinct_index,
                                                 int unit_index, int units) {
  cfg.validate();
  if (precinct_index < 0 || unit_index < 0 || unit_index >= units)
    throw InvariantError("candidate_window: indices out of range");
  std::vector<DisplacementVector> window;
  for (int dy = cfg.dy_min; dy <= cfg.dy_max; dy += cfg.dy_step) {
    if (precinct_index + dy / kPrecinctLines < 0) continue;
    for (int dx = cfg.dx_min; dx <= cfg.dx_max; dx += cfg.dx_step) {
      if (dx == 0 && dy == 0) continue;
      if (dy == 0 && dx > -kUnitPixels) continue;  // same row: strictly-left units only
      const int ref_unit = unit_index + dx / kUnitPixels;
      if (ref_unit < 0 || ref_unit >= units) continue;
      window.push_back(DisplacementVector{dx, dy});
    }
  }
  return window;
}

const PrecinctCoeffs& ReconStore::get(int precinct) const {
  if (!has(precinct))
    throw InvariantError("precinct " + std::to_string(precinct) +
                         " is not in the reconstructed history");
  return precincts_[static_cast<std::size_t>(precinct)];
}

void ReconStore::push(PrecinctCoeffs coeffs) {
  if (coeffs.precinct_index != static_cast<int>(precincts_.size()))
    throw InvariantError("precincts must enter the history in order");
  if (coeffs.bands[kHL1].shape.width * 2 != geom_.width)
    throw InvariantError("precinct width does not match the store geometry");
  precincts_.push_back(std::move(coeffs));
}

PrecinctCoeffs apply_recon_mode(const PrecinctCoeffs& coeffs, const ReconMode& mode) {
  if (mode.kind == ReconMode::Kind::passthrough) return coeffs;
  PrecinctCoeffs out = coeffs;
  const std::uint32_t mask = ~((1u << mode.shift) - 1u) & 0x7fffffffu;
  for (auto& band : out.bands)
    for (auto& c : band.data) {
      const std::uint32_t mag = c.magnitude() & mask;
      c = mag == 0 ? SignMag32{0}
                   : SignMag32{mag | (c.negative() ? 0x80000000u : 0u)};
    }
  return out;
}

UnitBuffer extract_unit(const PrecinctCoeffs& coeffs, const UnitDescriptor& desc) {
  UnitBuffer buf;
  buf.group = desc.group;
  buf.values.reserve(static_cast<std::size_t>(desc.total_coeffs));
  for (const UnitBlock& block : desc.blocks) {
    const BandGrid& grid = coeffs.bands[block.band];
    for (int r = block.row_begin; r < block.row_end; ++r)
      for (int c = block.col_begin; c < block.col_end; ++c)
        buf.values.push_back(grid.at(r, c));
  }
  return buf;
}

UnitBuffer fetch_reference(const ReconStore& store, const UnitDescriptor& desc, int precinct,
                           DisplacementVector dv) {
  if (dv.dx % kUnitPixels != 0 || dv.dy % kPrecinctLines != 0 || dv.dy > 0)
    throw InvariantError("displacement " + to_string(dv) + " is not unit-aligned and causal");
  const int ref_precinct = precinct + dv.dy / kPrecinctLines;
  if (!store.has(ref_precinct))
    throw InvariantError("displacement " + to_string(dv) + " references precinct " +
                         std::to_string(ref_precinct) + " outside the reconstructed history");
  const PrecinctCoeffs& ref = store.get(ref_precinct);
  UnitBuffer buf;
  buf.group = desc.group;
  buf.values.reserve(static_cast<std::size_t>(desc.total_coeffs));
  for (const UnitBlock& block : desc.blocks) {
    const int shift = dv.dx >> band_id(block.band).level_h;  // co-indexed column offset
    const BandGrid& grid = ref.bands[block.band];
    for (int r = block.row_begin; r < block.row_end; ++r)
      for (int c = block.col_begin; c < block.col_end; ++c)
        buf.values.push_back(grid.at(r, c + shift));
  }
  return buf;
}

std::vector<UnitDecision> search_unit(const PrecinctCoeffs& orig, const ReconStore& store,
                                      const SearchConfig& cfg, const ParamsTable& table,
                                      int precinct, int unit) {
  const PrecinctGeometry& geom = store.geometry();
  const std::vector<DisplacementVector> window =
      candidate_window(cfg, precinct, unit, geom.units());

  std::vector<UnitDecision> decisions;
  decisions.reserve(kNumGroups);
  for (int g = 0; g < kNumGroups; ++g) {
    const UnitDescriptor desc = unit_blocks(g, unit, geom);
    const UnitBuffer orig_buf = extract_unit(orig, desc);
    const GroupParams& params = table.of(g);

    UnitDecision decision;
    decision.unit_index = unit;
    decision.group = g;
    decision.orig_bits = unit_bit_cost(orig_buf.values, params);

    std::vector<UnitBuffer> residuals;
    std::vector<DisplacementVector> dvs;
    for (const DisplacementVector& dv : window) {
      if (!store.has(precinct + dv.dy / kPrecinctLines)) continue;  // not reconstructed yet
      residuals.push_back(
          compute_unit_residuals(orig_buf, fetch_reference(store, desc, precinct, dv)));
      dvs.push_back(dv);
    }
    if (!dvs.empty()) {
      const SearchOutcome outcome = run_candidates(g, residuals, dvs, table);
      decision.best_dv = outcome.best_dv;
      decision.ipc_bits = outcome.best_bits;
      if (outcome.best_bits + static_cast<BitCost>(cfg.dv_signal_bits) < decision.orig_bits)
        decision.mode = UnitDecision::Mode::IPC;
    }
    decisions.push_back(std::move(decision));
  }
  return decisions;
}

PrecinctReport search_precinct(const PrecinctCoeffs& orig, ReconStore& store,
                               const SearchConfig& cfg, const ParamsTable& table,
                               int threads) {
  cfg.validate();
  if (threads < 1) throw ConfigError("thread count must be at least 1");
  const PrecinctGeometry& geom = store.geometry();
  const int units = geom.units();
  const int precinct = orig.precinct_index;

  std::vector<std::vector<UnitDecision>> per_unit(static_cast<std::size_t>(units));
  auto worker = [&](int begin, int end) {
    for (int u = begin; u < end; ++u)
      per_unit[static_cast<std::size_t>(u)] = search_unit(orig, store, cfg, table, precinct, u);
  };
  const int workers = std::min(threads, units);
  if (workers <= 1) {
    worker(0, units);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (units + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(units, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  PrecinctReport report;
  report.precinct = precinct;
  for (auto& unit_decisions : per_unit)
    for (auto& d : unit_decisions) {
      report.orig_bits_total += d.orig_bits;
      const std::uint64_t ipc_total =
          d.best_dv ? static_cast<std::uint64_t>(d.ipc_bits) + cfg.dv_signal_bits
                    : ~std::uint64_t{0};
      report.coded_bits_total += std::min<std::uint64_t>(d.orig_bits, ipc_total);
      if (d.mode == UnitDecision::Mode::IPC) ++report.ipc_decisions;
      if (d.best_dv) ++report.eligible_decisions;
      report.decisions.push_back(std::move(d));
    }

  store.push(apply_recon_mode(orig, cfg.recon));
  return report;
}

std::vector<PrecinctReport> search_image(std::span<const PrecinctCoeffs> orig_precincts,
                                         const SearchConfig& cfg, int threads) {
  if (orig_precincts.empty()) return {};
  ReconStore store(
      PrecinctGeometry::for_width(orig_precincts[0].bands[kHL1].shape.width * 2));
  const ParamsTable table = ParamsTable::for_geometry(store.geometry());
  std::vector<PrecinctReport> reports;
  reports.reserve(orig_precincts.size());
  for (const PrecinctCoeffs& orig : orig_precincts)
    reports.push_back(search_precinct(orig, store, cfg, table, threads));
  return reports;
}

}  // namespace ipcdv
