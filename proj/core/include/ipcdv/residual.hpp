#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "ipcdv/grouping.hpp"
#include "ipcdv/sign_mag.hpp"

namespace ipcdv {

// Coefficients of one IPC unit in block scan order: canonical band order,
// row-major inside each block.
struct UnitBuffer {
  int group = 0;
  std::vector<SignMag32> values;

  friend bool operator==(const UnitBuffer&, const UnitBuffer&) = default;
};

// Element-wise sig_mag_sub(orig, ref); buffers must share group and shape.
UnitBuffer compute_unit_residuals(const UnitBuffer& orig, const UnitBuffer& ref);

enum class FifoId {
  Q0, Q1, Q2, Q3,  // original units, one per group
  C0, C1, C2, C3,  // reconstructed units
  R0, R1, R2, R3,  // residuals
};

const char* fifo_name(FifoId id);
FifoId query_fifo(int group);
FifoId candidate_fifo(int group);
FifoId residual_fifo(int group);

inline constexpr std::size_t kDefaultFifoDepth = 64;

// Occupancy-counted FIFO. Push on full or pop on empty is a modeling error.
template <typename T>
class FifoModel {
 public:
  explicit FifoModel(FifoId id, std::size_t depth = kDefaultFifoDepth)
      : id_(id), depth_(depth) {}

  FifoId id() const { return id_; }
  std::size_t depth() const { return depth_; }
  std::size_t occupancy() const { return buf_.size(); }
  bool empty() const { return buf_.empty(); }
  bool full() const { return buf_.size() >= depth_; }

  void push(T v) {
    if (full()) throw InvariantError(std::string(fifo_name(id_)) + ": push on full FIFO");
    buf_.push_back(std::move(v));
  }

  T pop() {
    if (empty()) throw InvariantError(std::string(fifo_name(id_)) + ": pop on empty FIFO");
    T v = std::move(buf_.front());
    buf_.pop_front();
    return v;
  }

 private:
  FifoId id_;
  std::size_t depth_;
  std::deque<T> buf_;
};

// Query/candidate FIFO pair of one IPC group.
struct GroupStream {
  explicit GroupStream(int group, std::size_t depth = kDefaultFifoDepth)
      : query(query_fifo(group), depth), candidate(candidate_fifo(group), depth) {}

  FifoModel<UnitBuffer> query;
  FifoModel<UnitBuffer> candidate;
};

struct ScheduleEvent {
  enum class Kind { Emit, Refill };
  Kind kind = Kind::Emit;
  int group = 0;
  UnitBuffer residuals;  // set for Emit
};

// CTRL arbitration: strict round-robin over groups 0..3. A group with both
// FIFOs non-empty emits one unit's residuals through its residual FIFO; a
// group with an empty FIFO is skipped and raises a refill request instead.
// Refills are recorded only in rounds that make progress; the schedule stops
// once a full round emits nothing.
std::vector<ScheduleEvent> ctrl_schedule(std::array<GroupStream, kNumGroups>& groups);

}  // namespace ipcdv
