#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "handmenu/frame.hpp"

namespace handmenu {

enum class Connectivity { Four = 4, Eight = 8 };

/// Inclusive pixel bounds.
struct BBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// One connected component of a mask.
struct Blob {
  int label = 0;
  std::int64_t area = 0;
  PointD centroid;
  BBox bbox;

  friend bool operator==(const Blob&, const Blob&) = default;
};

/// Two-pass union-find labeling. Labels start at 1 and follow the raster-scan
/// order in which each component is first met.
std::vector<Blob> label_components(const BinaryMask& mask, Connectivity connectivity = Connectivity::Eight);

/// Keeps blobs with area >= min_area, preserving order.
std::vector<Blob> filter_blobs(std::span<const Blob> blobs, std::int64_t min_area);

/// Maximal area; ties go to the smallest label.
std::optional<Blob> largest_blob(std::span<const Blob> blobs);

}  // namespace handmenu
