#pragma once

#include <vector>

#include "ipcdv/wavelet.hpp"

namespace ipcdv {

inline constexpr int kNumGroups = 4;

// Band-to-group table: level-1 bands, level-2 bands, mid HL bands, coarse
// bands. Every band belongs to exactly one group.
int band_to_group(Band b);

// Member bands of a group, in canonical band order.
const std::vector<Band>& group_bands(int group);

// Number of 32-pixel unit strips per precinct. Width must divide evenly.
int units_per_precinct(int width);

struct UnitBlock {
  Band band = kLL5;
  int row_begin = 0, row_end = 0;  // [begin, end)
  int col_begin = 0, col_end = 0;

  int rows() const { return row_end - row_begin; }
  int cols() const { return col_end - col_begin; }
  int size() const { return rows() * cols(); }

  friend bool operator==(const UnitBlock&, const UnitBlock&) = default;
};

// The coefficient blocks of one IPC unit: one block per member band, all
// covering the same 32-pixel spatial strip.
struct UnitDescriptor {
  int group = 0;
  int unit_index = 0;
  std::vector<UnitBlock> blocks;  // canonical band order
  int total_coeffs = 0;
};

UnitDescriptor unit_blocks(int group, int unit_index, const PrecinctGeometry& geom);

// Stage-0 parameters of the comparison pipeline.
struct GroupParams {
  int group = 0;
  std::vector<Band> band_idx;  // the group's band list
  int grp_size = 0;            // coefficients per unit
  int unit_width = 0;          // widest block row in the group

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

GroupParams group_params(int group, const PrecinctGeometry& geom);

}  // namespace ipcdv
