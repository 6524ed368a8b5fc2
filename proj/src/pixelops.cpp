#include "handmenu/pixelops.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "handmenu/error.hpp"

namespace handmenu {

namespace {

void check_bound(const char* name, double value, double lo, double hi, bool hi_inclusive) {
  const bool ok = std::isfinite(value) && value >= lo && (hi_inclusive ? value <= hi : value < hi);
  if (!ok) {
    throw ParameterError(std::string("hsv_range.") + name + " = " + std::to_string(value) +
                         " outside [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + (hi_inclusive ? "]" : ")"));
  }
}

// Horizontal window sums of 2r+1 taps for one RGB row, edges replicated.
void row_window_sums(const std::uint8_t* src, std::uint32_t* dst, int width, int radius) {
  const auto at = [&](int x, int c) -> std::uint32_t { return src[std::clamp(x, 0, width - 1) * 3 + c]; };
  std::uint32_t sum[3] = {0, 0, 0};
  for (int c = 0; c < 3; ++c) {
    for (int k = -radius; k <= radius; ++k) sum[c] += at(k, c);
  }
  for (int x = 0; x < width; ++x) {
    for (int c = 0; c < 3; ++c) {
      dst[x * 3 + c] = sum[c];
      sum[c] += at(x + radius + 1, c);
      sum[c] -= at(x - radius, c);
    }
  }
}

}  // namespace

bool HsvRange::contains(const HsvPixel& p) const noexcept {
  if (p.s < s_lo || p.s > s_hi || p.v < v_lo || p.v > v_hi) return false;
  if (wraps()) return p.h >= h_lo || p.h <= h_hi;
  return p.h >= h_lo && p.h <= h_hi;
}

void HsvRange::validate() const {
  check_bound("h_lo", h_lo, 0.0, 360.0, false);
  check_bound("h_hi", h_hi, 0.0, 360.0, false);
  check_bound("s_lo", s_lo, 0.0, 1.0, true);
  check_bound("s_hi", s_hi, 0.0, 1.0, true);
  check_bound("v_lo", v_lo, 0.0, 1.0, true);
  check_bound("v_hi", v_hi, 0.0, 1.0, true);
  if (s_lo > s_hi) throw ParameterError("hsv_range.s_lo exceeds s_hi");
  if (v_lo > v_hi) throw ParameterError("hsv_range.v_lo exceeds v_hi");
}

Frame box_blur(const Frame& frame, int radius) {
  const int w = frame.width();
  const int h = frame.height();
  const int limit = std::min(w, h) / 2;
  if (radius < 0 || radius > limit) {
    throw ParameterError("blur radius " + std::to_string(radius) + " outside [0, " + std::to_string(limit) +
                         "] for a " + std::to_string(w) + "x" + std::to_string(h) + " frame");
  }
  if (radius == 0) return frame;

  const std::size_t stride = static_cast<std::size_t>(w) * 3;
  std::vector<std::uint32_t> rows(stride * h);
  const std::uint8_t* src = frame.pixels().data();
  for (int y = 0; y < h; ++y) row_window_sums(src + y * stride, rows.data() + y * stride, w, radius);

  // Vertical pass as a running sum of whole rows.
  const auto row = [&](int y) { return rows.data() + static_cast<std::size_t>(std::clamp(y, 0, h - 1)) * stride; };
  std::vector<std::uint32_t> column(stride, 0);
  for (int k = -radius; k <= radius; ++k) {
    const std::uint32_t* r = row(k);
    for (std::size_t i = 0; i < stride; ++i) column[i] += r[i];
  }

  const std::uint32_t taps = static_cast<std::uint32_t>((2 * radius + 1) * (2 * radius + 1));
  std::vector<std::uint8_t> out(stride * h);
  for (int y = 0; y < h; ++y) {
    std::uint8_t* dst = out.data() + y * stride;
    for (std::size_t i = 0; i < stride; ++i) {
      // floor(sum / taps + 1/2) in integers
      dst[i] = static_cast<std::uint8_t>((2 * column[i] + taps) / (2 * taps));
    }
    const std::uint32_t* add = row(y + radius + 1);
    const std::uint32_t* sub = row(y - radius);
    for (std::size_t i = 0; i < stride; ++i) column[i] = column[i] + add[i] - sub[i];
  }
  return Frame(w, h, std::move(out), frame.timestamp_ms());
}

HsvPixel rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  HsvPixel out;
  out.v = mx / 255.0;
  if (mx == 0) return out;
  const int delta = mx - mn;
  out.s = static_cast<double>(delta) / static_cast<double>(mx);
  if (delta == 0) return out;

  const double d = delta;
  double hue;
  if (mx == r) {
    hue = 60.0 * ((static_cast<int>(g) - static_cast<int>(b)) / d);
  } else if (mx == g) {
    hue = 60.0 * ((static_cast<int>(b) - static_cast<int>(r)) / d + 2.0);
  } else {
    hue = 60.0 * ((static_cast<int>(r) - static_cast<int>(g)) / d + 4.0);
  }
  if (hue < 0.0) hue += 360.0;
  if (hue >= 360.0) hue -= 360.0;
  out.h = hue;
  return out;
}

BinaryMask threshold_hsv(const Frame& frame, const HsvRange& range) {
  BinaryMask mask(frame.width(), frame.height());
  const auto px = frame.pixels();
  auto bits = mask.bits();
  for (std::size_t i = 0, j = 0; j < bits.size(); i += 3, ++j) {
    bits[j] = range.contains(rgb_to_hsv(px[i], px[i + 1], px[i + 2])) ? 1 : 0;
  }
  return mask;
}

}  // namespace handmenu
