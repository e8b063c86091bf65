#include "ipcdv/sign_mag.hpp"

#include <string>

namespace ipcdv {

namespace {

SignMag32 make(bool negative, std::uint64_t magnitude) {
  if (magnitude >= static_cast<std::uint64_t>(kMagnitudeLimit))
    throw InvariantError("sign-magnitude overflow: magnitude " + std::to_string(magnitude) +
                         " >= 2^31");
  if (magnitude == 0) return SignMag32{0};
  return SignMag32{static_cast<std::uint32_t>(magnitude) | (negative ? 0x80000000u : 0u)};
}

}  // namespace

SignMag32 encode_sign_mag(std::int64_t v) {
  const bool negative = v < 0;
  const std::uint64_t magnitude = negative ? static_cast<std::uint64_t>(-v)
                                           : static_cast<std::uint64_t>(v);
  return make(negative, magnitude);
}

SignMag32 sig_mag_sub(SignMag32 a, SignMag32 b) {
  const std::uint64_t ma = a.magnitude();
  const std::uint64_t mb = b.magnitude();
  // One path per operand sign pair, as in the four parallel subtractors.
  if (!a.negative() && !b.negative())
    return ma >= mb ? make(false, ma - mb) : make(true, mb - ma);
  if (!a.negative() && b.negative()) return make(false, ma + mb);
  if (a.negative() && !b.negative()) return make(true, ma + mb);
  return mb >= ma ? make(false, mb - ma) : make(true, ma - mb);
}

}  // namespace ipcdv
