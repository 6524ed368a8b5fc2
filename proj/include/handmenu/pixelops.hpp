#pragma once

#include <cstdint>

#include "handmenu/frame.hpp"

namespace handmenu {

/// Hue in degrees [0, 360); saturation and value as fractions in [0, 1].
/// Achromatic pixels (s == 0) carry h == 0.
struct HsvPixel {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

/// Inclusive HSV band. h_lo > h_hi denotes a hue interval wrapping through 0
/// (e.g. 350..10 for red).
struct HsvRange {
  double h_lo = 0.0;
  double h_hi = 360.0 - 1e-3;
  double s_lo = 0.0;
  double s_hi = 1.0;
  double v_lo = 0.0;
  double v_hi = 1.0;

  bool wraps() const noexcept { return h_lo > h_hi; }
  bool contains(const HsvPixel& p) const noexcept;

  /// Throws ParameterError naming the first bound out of its domain.
  void validate() const;

  friend bool operator==(const HsvRange&, const HsvRange&) = default;
};

/// Uniform (2r+1)^2 mean filter with edge replication, rounded half-up.
/// Throws ParameterError when radius exceeds min(width, height) / 2.
Frame box_blur(const Frame& frame, int radius);

/// Hexcone RGB -> HSV conversion.
HsvPixel rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

/// Marks every pixel whose HSV value lies inside `range`.
BinaryMask threshold_hsv(const Frame& frame, const HsvRange& range);

}  // namespace handmenu
