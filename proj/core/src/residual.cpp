#include "ipcdv/residual.hpp"

namespace ipcdv {

UnitBuffer compute_unit_residuals(const UnitBuffer& orig, const UnitBuffer& ref) {
  if (orig.group != ref.group)
    throw InvariantError("compute_unit_residuals: group mismatch");
  if (orig.values.size() != ref.values.size())
    throw InvariantError("compute_unit_residuals: shape mismatch (" +
                         std::to_string(orig.values.size()) + " vs " +
                         std::to_string(ref.values.size()) + " coefficients)");
  UnitBuffer out;
  out.group = orig.group;
  out.values.resize(orig.values.size());
  for (std::size_t i = 0; i < orig.values.size(); ++i)
    out.values[i] = sig_mag_sub(orig.values[i], ref.values[i]);
  return out;
}

const char* fifo_name(FifoId id) {
  static const char* names[] = {"Q0", "Q1", "Q2", "Q3", "C0", "C1",
                                "C2", "C3", "R0", "R1", "R2", "R3"};
  return names[static_cast<int>(id)];
}

FifoId query_fifo(int group) { return static_cast<FifoId>(static_cast<int>(FifoId::Q0) + group); }
FifoId candidate_fifo(int group) {
  return static_cast<FifoId>(static_cast<int>(FifoId::C0) + group);
}
FifoId residual_fifo(int group) {
  return static_cast<FifoId>(static_cast<int>(FifoId::R0) + group);
}

std::vector<ScheduleEvent> ctrl_schedule(std::array<GroupStream, kNumGroups>& groups) {
  std::vector<ScheduleEvent> events;
  std::array<FifoModel<UnitBuffer>, kNumGroups> residual_fifos{
      FifoModel<UnitBuffer>(FifoId::R0), FifoModel<UnitBuffer>(FifoId::R1),
      FifoModel<UnitBuffer>(FifoId::R2), FifoModel<UnitBuffer>(FifoId::R3)};

  while (true) {
    std::vector<ScheduleEvent> round;
    bool progressed = false;
    for (int g = 0; g < kNumGroups; ++g) {
      GroupStream& s = groups[g];
      if (!s.query.empty() && !s.candidate.empty()) {
        const UnitBuffer orig = s.query.pop();
        const UnitBuffer ref = s.candidate.pop();
        residual_fifos[g].push(compute_unit_residuals(orig, ref));
        round.push_back({ScheduleEvent::Kind::Emit, g, residual_fifos[g].pop()});
        progressed = true;
      } else {
        // One side starved: ask CMD for a burst refill.
        round.push_back({ScheduleEvent::Kind::Refill, g, {}});
      }
    }
    if (!progressed) break;
    for (auto& e : round) events.push_back(std::move(e));
  }
  return events;
}

}  // namespace ipcdv
