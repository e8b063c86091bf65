#include "ipcdv/grouping.hpp"

#include <algorithm>
#include <string>

namespace ipcdv {

namespace {

// Indexed by Band; canonical order.
constexpr int kGroupOf[kBandCount] = {
    3,  // LL5
    3,  // HL5
    2,  // HL4
    2,  // HL3
    1,  // HL2
    0,  // HL1
    1,  // LH2
    1,  // HH2
    0,  // LH1
    0,  // HH1
};

void check_group(int group) {
  if (group < 0 || group >= kNumGroups)
    throw InvariantError("group index " + std::to_string(group) + " out of range");
}

}  // namespace

int band_to_group(Band b) {
  if (b < 0 || b >= kBandCount)
    throw InvariantError("unknown band " + std::to_string(static_cast<int>(b)));
  return kGroupOf[b];
}

const std::vector<Band>& group_bands(int group) {
  check_group(group);
  static const std::vector<Band> tables[kNumGroups] = {
      {kHL1, kLH1, kHH1},
      {kHL2, kLH2, kHH2},
      {kHL4, kHL3},
      {kLL5, kHL5},
  };
  return tables[group];
}

int units_per_precinct(int width) {
  if (width <= 0 || width % kUnitPixels != 0)
    throw InvariantError("width " + std::to_string(width) + " is not a positive multiple of " +
                         std::to_string(kUnitPixels));
  return width / kUnitPixels;
}

UnitDescriptor unit_blocks(int group, int unit_index, const PrecinctGeometry& geom) {
  check_group(group);
  const int units = units_per_precinct(geom.width);
  if (unit_index < 0 || unit_index >= units)
    throw InvariantError("unit index " + std::to_string(unit_index) + " out of range for " +
                         std::to_string(units) + " units");
  UnitDescriptor desc;
  desc.group = group;
  desc.unit_index = unit_index;
  for (Band b : group_bands(group)) {
    const BandShape& shape = geom.shape(b);
    const int block_width = kUnitPixels >> band_id(b).level_h;
    UnitBlock block{b, 0, shape.height, unit_index * block_width, (unit_index + 1) * block_width};
    desc.total_coeffs += block.size();
    desc.blocks.push_back(block);
  }
  return desc;
}

GroupParams group_params(int group, const PrecinctGeometry& geom) {
  const UnitDescriptor desc = unit_blocks(group, 0, geom);
  GroupParams params;
  params.group = group;
  params.band_idx = group_bands(group);
  params.grp_size = desc.total_coeffs;
  for (const UnitBlock& block : desc.blocks)
    params.unit_width = std::max(params.unit_width, block.cols());
  return params;
}

}  // namespace ipcdv
