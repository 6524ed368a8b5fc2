#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "handmenu/action.hpp"
#include "handmenu/blob.hpp"
#include "handmenu/frame.hpp"

namespace handmenu {

/// Axis-aligned rectangle in normalized frame coordinates. Containment is
/// half-open: [x0, x1) x [y0, y1).
struct NormRect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(double x, double y) const noexcept { return x >= x0 && x < x1 && y >= y0 && y < y1; }
  NormRect inflated(double margin) const noexcept { return {x0 - margin, y0 - margin, x1 + margin, y1 + margin}; }
  PointD center() const noexcept { return {(x0 + x1) / 2.0, (y0 + y1) / 2.0}; }

  friend bool operator==(const NormRect&, const NormRect&) = default;
};

struct MenuRegion {
  std::string id;
  PlayerAction action = PlayerAction::PlayPause;
  NormRect rect;
  std::string caption;

  friend bool operator==(const MenuRegion&, const MenuRegion&) = default;
};

/// Ordered set of non-overlapping action regions.
class MenuModel {
 public:
  MenuModel() = default;
  /// Throws ParameterError if ids repeat, a rect is degenerate or leaves
  /// [0,1]^2, or two rects overlap (shared edges are fine).
  explicit MenuModel(std::vector<MenuRegion> regions);

  const std::vector<MenuRegion>& regions() const noexcept { return regions_; }
  const MenuRegion* find(std::string_view id) const noexcept;
  bool empty() const noexcept { return regions_.empty(); }

  friend bool operator==(const MenuModel&, const MenuModel&) = default;

 private:
  std::vector<MenuRegion> regions_;
};

/// Seven-button strip along the left edge: play_pause, stop, prev, next,
/// vol_down, vol_up, mute, top to bottom.
MenuModel default_menu();

/// Region containing `point` (normalized). The region named `hovered`, if any,
/// is tested first with its rect grown by `inflate` on every side.
std::optional<std::string> hit_test(const MenuModel& menu, PointD point,
                                    const std::optional<std::string>& hovered = std::nullopt,
                                    double inflate = 0.0);

struct OverlaySpec {
  MenuModel menu;
  std::optional<PointD> pointer;  // pixels
  std::optional<std::string> hovered;
  double dwell_progress = 0.0;
  std::vector<BBox> blobs;

  /// Throws ParameterError when progress leaves [0,1] or `hovered` names no region.
  void validate() const;
};

namespace palette {
inline constexpr Rgb kMenuOutline{255, 255, 255};
inline constexpr Rgb kCaptionTick{160, 160, 160};
inline constexpr Rgb kHover{0, 255, 0};
inline constexpr Rgb kCrosshair{255, 0, 0};
inline constexpr Rgb kBlobBox{255, 255, 0};
}  // namespace palette

/// Pixel bounds (inclusive) a normalized rect covers on a frame of `size`,
/// clipped to the frame. Empty when x_max < x_min or y_max < y_min.
BBox to_pixels(const NormRect& rect, FrameSize size) noexcept;

/// Copy of `frame` with the menu, hover state, pointer crosshair and blob boxes
/// drawn on top. Every primitive is clipped to the frame.
Frame render_overlay(const Frame& frame, const OverlaySpec& spec);

}  // namespace handmenu
