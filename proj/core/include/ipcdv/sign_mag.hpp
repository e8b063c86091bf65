#pragma once

#include <cstdint>

#include "ipcdv/errors.hpp"

namespace ipcdv {

// One coefficient word: bit 31 carries the sign, bits 30..0 the magnitude.
// Zero is always stored as +0; a negative zero never appears, so raw-word
// equality is value equality.
struct SignMag32 {
  std::uint32_t raw = 0;

  constexpr bool negative() const { return (raw >> 31) != 0; }
  constexpr std::uint32_t magnitude() const { return raw & 0x7fffffffu; }

  friend constexpr bool operator==(SignMag32 a, SignMag32 b) { return a.raw == b.raw; }
};

inline constexpr std::int64_t kMagnitudeLimit = std::int64_t{1} << 31;

// Throws InvariantError when |v| >= 2^31.
SignMag32 encode_sign_mag(std::int64_t v);

constexpr std::int32_t decode_sign_mag(SignMag32 c) {
  const auto m = static_cast<std::int32_t>(c.magnitude());
  return c.negative() ? -m : m;
}

// Signed subtraction a - b, realized as the four sign-combination paths of
// the subtraction hardware. Throws on magnitude overflow.
SignMag32 sig_mag_sub(SignMag32 a, SignMag32 b);

}  // namespace ipcdv
