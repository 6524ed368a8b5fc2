#include "handmenu/blob.hpp"

#include <algorithm>
#include <limits>

namespace handmenu {

namespace {

class UnionFind {
 public:
  std::uint32_t make() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }

  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  // The smaller root survives, so each root is the earliest provisional label
  // of its set.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
};

struct Accumulator {
  std::int64_t area = 0;
  std::int64_t sum_x = 0;
  std::int64_t sum_y = 0;
  BBox bbox{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), -1, -1};
};

}  // namespace

std::vector<Blob> label_components(const BinaryMask& mask, Connectivity connectivity) {
  const int w = mask.width();
  const int h = mask.height();
  const bool diagonal = connectivity == Connectivity::Eight;
  constexpr std::uint32_t kNone = 0;

  // Provisional labels are 1-based; index 0 of the union-find is a sentinel.
  std::vector<std::uint32_t> provisional(static_cast<std::size_t>(w) * h, kNone);
  UnionFind sets;
  sets.make();

  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    const std::size_t above = row - static_cast<std::size_t>(w);
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      std::uint32_t neighbours[4];
      int count = 0;
      if (x > 0 && provisional[row + x - 1] != kNone) neighbours[count++] = provisional[row + x - 1];
      if (y > 0) {
        if (provisional[above + x] != kNone) neighbours[count++] = provisional[above + x];
        if (diagonal) {
          if (x > 0 && provisional[above + x - 1] != kNone) neighbours[count++] = provisional[above + x - 1];
          if (x + 1 < w && provisional[above + x + 1] != kNone) neighbours[count++] = provisional[above + x + 1];
        }
      }
      if (count == 0) {
        provisional[row + x] = sets.make();
        continue;
      }
      std::uint32_t label = neighbours[0];
      for (int i = 1; i < count; ++i) label = std::min(label, neighbours[i]);
      provisional[row + x] = label;
      for (int i = 0; i < count; ++i) sets.unite(label, neighbours[i]);
    }
  }

  std::vector<std::uint32_t> final_label(sets.size(), kNone);
  std::vector<Accumulator> acc;
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const std::uint32_t p = provisional[row + x];
      if (p == kNone) continue;
      const std::uint32_t root = sets.find(p);
      if (final_label[root] == kNone) {
        acc.emplace_back();
        final_label[root] = static_cast<std::uint32_t>(acc.size());
      }
      Accumulator& a = acc[final_label[root] - 1];
      ++a.area;
      a.sum_x += x;
      a.sum_y += y;
      a.bbox.x_min = std::min(a.bbox.x_min, x);
      a.bbox.y_min = std::min(a.bbox.y_min, y);
      a.bbox.x_max = std::max(a.bbox.x_max, x);
      a.bbox.y_max = std::max(a.bbox.y_max, y);
    }
  }

  std::vector<Blob> blobs;
  blobs.reserve(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const auto& a = acc[i];
    blobs.push_back(Blob{static_cast<int>(i + 1), a.area,
                         PointD{static_cast<double>(a.sum_x) / static_cast<double>(a.area),
                                static_cast<double>(a.sum_y) / static_cast<double>(a.area)},
                         a.bbox});
  }
  return blobs;
}

std::vector<Blob> filter_blobs(std::span<const Blob> blobs, std::int64_t min_area) {
  std::vector<Blob> kept;
  std::copy_if(blobs.begin(), blobs.end(), std::back_inserter(kept),
               [min_area](const Blob& b) { return b.area >= min_area; });
  return kept;
}

std::optional<Blob> largest_blob(std::span<const Blob> blobs) {
  const Blob* best = nullptr;
  for (const auto& b : blobs) {
    if (best == nullptr || b.area > best->area || (b.area == best->area && b.label < best->label)) best = &b;
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

}  // namespace handmenu
