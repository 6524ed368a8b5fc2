#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace handmenu {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct PointD {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PointD&, const PointD&) = default;
};

struct FrameSize {
  int width = 0;
  int height = 0;

  friend bool operator==(const FrameSize&, const FrameSize&) = default;
};

/// Row-major RGB8 raster stamped with milliseconds since stream start.
class Frame {
 public:
  /// Black frame. Throws ParameterError unless width, height >= 1.
  Frame(int width, int height, std::int64_t timestamp_ms = 0);
  /// Adopts `pixels`, which must hold exactly width*height*3 bytes.
  Frame(int width, int height, std::vector<std::uint8_t> pixels, std::int64_t timestamp_ms = 0);

  static Frame filled(int width, int height, Rgb color, std::int64_t timestamp_ms = 0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  FrameSize size() const noexcept { return {width_, height_}; }
  std::int64_t timestamp_ms() const noexcept { return timestamp_ms_; }
  void set_timestamp_ms(std::int64_t t) noexcept { timestamp_ms_ = t; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  Rgb at(int x, int y) const noexcept {
    const std::size_t i = index(x, y);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }
  void set(int x, int y, Rgb c) noexcept {
    const std::size_t i = index(x, y);
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
  }

  int width_;
  int height_;
  std::int64_t timestamp_ms_;
  std::vector<std::uint8_t> pixels_;
};

/// Boolean raster; one byte (0 or 1) per pixel.
class BinaryMask {
 public:
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  FrameSize size() const noexcept { return {width_, height_}; }

  bool at(int x, int y) const noexcept { return bits_[static_cast<std::size_t>(y) * width_ + x] != 0; }
  void set(int x, int y, bool v) noexcept { bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0; }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::span<std::uint8_t> bits() noexcept { return bits_; }

  std::size_t count() const noexcept;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace handmenu
