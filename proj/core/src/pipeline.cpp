#include "ipcdv/pipeline.hpp"

#include <bit>

namespace ipcdv {

std::string to_string(DisplacementVector dv) {
  return "(" + std::to_string(dv.dx) + "," + std::to_string(dv.dy) + ")";
}

int gcli_bit_length(std::uint32_t v) { return std::bit_width(v); }

int quad_count(int grp_size) { return (grp_size + kQuadSize - 1) / kQuadSize; }

OrMask stage1_get_or_mask(std::span<const SignMag32> data, const GroupParams& params) {
  if (static_cast<int>(data.size()) != params.grp_size)
    throw InvariantError("stage1: data length " + std::to_string(data.size()) +
                         " != grp_size " + std::to_string(params.grp_size));
  OrMask mask;
  const int quads = quad_count(params.grp_size);
  mask.or_idx.assign(static_cast<std::size_t>(quads), 0);
  for (std::size_t i = 0; i < data.size(); ++i)
    mask.or_idx[i / kQuadSize] |= data[i].magnitude();
  for (std::uint32_t w : mask.or_idx) mask.or_all |= w;
  return mask;
}

BitCost stage2_cal_gcli(const OrMask& mask, const GroupParams& params) {
  const int quads = quad_count(params.grp_size);
  if (static_cast<int>(mask.or_idx.size()) != quads)
    throw InvariantError("stage2: quad count mismatch");
  const BitCost signal = kGcliSignalBitsPerQuad * static_cast<BitCost>(quads);
  if (mask.or_all == 0) return signal;  // shortcut; value-neutral
  BitCost bits = signal;
  for (std::uint32_t w : mask.or_idx)
    bits += 4u * static_cast<BitCost>(gcli_bit_length(w));
  return bits;
}

BitCost unit_bit_cost(std::span<const SignMag32> data, const GroupParams& params) {
  return stage2_cal_gcli(stage1_get_or_mask(data, params), params);
}

void stage3_compare(BitCost bits_test, DisplacementVector dv_d2, CompareState& state) {
  if (bits_test < state.bits_best) {
    state.bits_best = bits_test;
    state.best_dv = dv_d2;
  }
}

ParamsTable ParamsTable::for_geometry(const PrecinctGeometry& geom) {
  ParamsTable table;
  for (int g = 0; g < kNumGroups; ++g) table.groups[g] = group_params(g, geom);
  return table;
}

const GroupParams& ParamsTable::of(int group) const {
  if (group < 0 || group >= kNumGroups)
    throw InvariantError("group index " + std::to_string(group) + " out of range");
  return groups[group];
}

Stage0Output stage0_load(const Stage0Input& in, const ParamsTable& table) {
  const GroupParams& params = table.of(in.group);
  if (in.residuals.group != in.group)
    throw InvariantError("stage0: buffer group " + std::to_string(in.residuals.group) +
                         " does not match input group " + std::to_string(in.group));
  if (static_cast<int>(in.residuals.values.size()) != params.grp_size)
    throw InvariantError("stage0: residual shape mismatch for group " +
                         std::to_string(in.group));
  return Stage0Output{params, in.residuals.values, in.dv};
}

namespace {

std::uint32_t fnv1a(std::span<const std::uint32_t> words) {
  std::uint32_t h = 0x811c9dc5u;
  for (std::uint32_t w : words)
    for (int i = 0; i < 4; ++i) {
      h ^= (w >> (8 * i)) & 0xffu;
      h *= 16777619u;
    }
  return h;
}

std::string hex8(std::uint32_t v) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

std::string opt_dv(const std::optional<DisplacementVector>& dv) {
  return dv ? to_string(*dv) : "-";
}

}  // namespace

std::string format_trace_record(const TraceRecord& rec) {
  std::string line = "cycle=" + std::to_string(rec.cycle);
  line += " s0=" + opt_dv(rec.s0);
  line += " s1=" + opt_dv(rec.s1);
  line += " s2=" + opt_dv(rec.s2);
  line += " s3=" + opt_dv(rec.s3);
  line += " or_idx=" + hex8(rec.or_digest);
  line += " or_all=" + hex8(rec.or_all);
  line += " dv_d1=" + opt_dv(rec.dv_d1);
  line += " dv_d2=" + opt_dv(rec.dv_d2);
  line += " bits_test=" + (rec.bits_test ? std::to_string(*rec.bits_test) : std::string("-"));
  line += " bits_best=" +
          (rec.best_dv ? std::to_string(rec.bits_best) : std::string("inf"));
  line += " best_dv=" + opt_dv(rec.best_dv);
  return line;
}

DvPipeline::DvPipeline(ParamsTable table, std::vector<TraceRecord>* trace)
    : table_(std::move(table)), trace_(trace) {}

bool DvPipeline::busy() const {
  return l0_.has_value() || l1_.has_value() || l2_.has_value() || out_.has_value();
}

std::optional<CycleOutput> DvPipeline::step(std::optional<Stage0Input> input) {
  ++cycle_;
  // The output latched by stage 3 last cycle becomes visible now.
  const std::optional<CycleOutput> visible = out_;

  // Per-stage occupancy this cycle, captured before the latches shift.
  const std::optional<DisplacementVector> s0 =
      input ? std::optional(input->dv) : std::nullopt;
  const std::optional<DisplacementVector> s1 = l0_ ? std::optional(l0_->dv) : std::nullopt;
  const std::optional<DisplacementVector> s2 = l1_ ? std::optional(l1_->dv_d1) : std::nullopt;
  const std::optional<DisplacementVector> s3 = l2_ ? std::optional(l2_->dv_d2) : std::nullopt;

  // Stage 3: compare and update the best registers.
  if (l2_) {
    stage3_compare(l2_->bits_test, l2_->dv_d2, compare_);
    out_ = CycleOutput{l2_->bits_test, l2_->dv_d2, compare_.bits_best, compare_.best_dv};
  } else {
    out_.reset();
  }

  // Stages 2, 1, 0 feed the next latches.
  std::optional<Latch2> next_l2;
  if (l1_) next_l2 = Latch2{stage2_cal_gcli(l1_->mask, l1_->params), l1_->dv_d1};
  std::optional<Latch1> next_l1;
  if (l0_) next_l1 = Latch1{stage1_get_or_mask(l0_->data, l0_->params), l0_->dv, l0_->params};
  std::optional<Latch0> next_l0;
  if (input) {
    Stage0Output s = stage0_load(*input, table_);
    next_l0 = Latch0{std::move(s.params), std::move(s.data_buf), s.dv};
  }
  l2_ = std::move(next_l2);
  l1_ = std::move(next_l1);
  l0_ = std::move(next_l0);

  if (trace_) {
    TraceRecord rec;
    rec.cycle = cycle_;
    rec.s0 = s0;
    rec.s1 = s1;
    rec.s2 = s2;
    rec.s3 = s3;
    if (l1_) {
      rec.or_digest = fnv1a(l1_->mask.or_idx);
      rec.or_all = l1_->mask.or_all;
      rec.dv_d1 = l1_->dv_d1;
    }
    if (l2_) {
      rec.dv_d2 = l2_->dv_d2;
      rec.bits_test = l2_->bits_test;
    }
    rec.bits_best = compare_.bits_best;
    rec.best_dv = compare_.best_dv;
    trace_->push_back(std::move(rec));
  }
  return visible;
}

SearchOutcome run_candidates(int group, std::span<const UnitBuffer> residuals,
                             std::span<const DisplacementVector> dvs,
                             const ParamsTable& table, std::vector<TraceRecord>* trace) {
  if (dvs.empty()) throw InvariantError("run_candidates: empty candidate list");
  if (residuals.size() != dvs.size())
    throw InvariantError("run_candidates: residual/candidate count mismatch");

  DvPipeline pipe(table, trace);
  std::optional<CycleOutput> last;
  std::size_t fed = 0;
  while (fed < dvs.size() || pipe.busy()) {
    std::optional<Stage0Input> in;
    if (fed < dvs.size()) {
      in = Stage0Input{group, residuals[fed], dvs[fed]};
      ++fed;
    }
    if (auto out = pipe.step(std::move(in))) last = out;
  }
  return SearchOutcome{*last->best_dv, last->bits_best};
}

SearchOutcome oracle_best_dv(std::span<const UnitBuffer> residuals,
                             std::span<const DisplacementVector> dvs) {
  if (dvs.empty()) throw InvariantError("oracle_best_dv: empty candidate list");
  if (residuals.size() != dvs.size())
    throw InvariantError("oracle_best_dv: residual/candidate count mismatch");

  SearchOutcome best{};
  bool have = false;
  BitCost best_bits = 0;
  for (std::size_t i = 0; i < dvs.size(); ++i) {
    const auto& values = residuals[i].values;
    BitCost bits = 0;
    for (std::size_t q = 0; q * kQuadSize < values.size(); ++q) {
      int gcli = 0;
      for (std::size_t k = q * kQuadSize; k < std::min(values.size(), (q + 1) * kQuadSize);
           ++k) {
        std::uint32_t m = values[k].magnitude();
        int len = 0;
        while (m != 0) {
          ++len;
          m >>= 1;
        }
        if (len > gcli) gcli = len;
      }
      bits += 4u * static_cast<BitCost>(gcli) + kGcliSignalBitsPerQuad;
    }
    if (!have || bits < best_bits) {
      have = true;
      best_bits = bits;
      best = SearchOutcome{dvs[i], bits};
    }
  }
  return best;
}

}  // namespace ipcdv
