#include "handmenu/frame.hpp"

#include <algorithm>
#include <string>

#include "handmenu/error.hpp"

namespace handmenu {

namespace {

std::size_t checked_area(int width, int height) {
  if (width < 1 || height < 1) {
    throw ParameterError("raster dimensions must be >= 1, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

Frame::Frame(int width, int height, std::int64_t timestamp_ms)
    : width_(width),
      height_(height),
      timestamp_ms_(timestamp_ms),
      pixels_(checked_area(width, height) * 3, 0) {}

Frame::Frame(int width, int height, std::vector<std::uint8_t> pixels, std::int64_t timestamp_ms)
    : width_(width), height_(height), timestamp_ms_(timestamp_ms), pixels_(std::move(pixels)) {
  const std::size_t expected = checked_area(width, height) * 3;
  if (pixels_.size() != expected) {
    throw ParameterError("pixel buffer holds " + std::to_string(pixels_.size()) + " bytes, expected " +
                         std::to_string(expected));
  }
}

Frame Frame::filled(int width, int height, Rgb color, std::int64_t timestamp_ms) {
  Frame f(width, height, timestamp_ms);
  auto px = f.pixels();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    px[i] = color.r;
    px[i + 1] = color.g;
    px[i + 2] = color.b;
  }
  return f;
}

BinaryMask::BinaryMask(int width, int height)
    : width_(width), height_(height), bits_(checked_area(width, height), 0) {}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (bits_.size() != checked_area(width, height)) {
    throw ParameterError("mask buffer size does not match dimensions");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

}  // namespace handmenu
