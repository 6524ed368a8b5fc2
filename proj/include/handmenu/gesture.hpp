#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "handmenu/blob.hpp"
#include "handmenu/frame.hpp"
#include "handmenu/menu.hpp"

namespace handmenu {

/// Smoothed pointer in pixel coordinates. `position` is meaningful only while
/// `present` is true.
struct PointerState {
  bool present = false;
  PointD position;
  std::int64_t last_seen_ms = 0;

  friend bool operator==(const PointerState&, const PointerState&) = default;
};

/// Exponential smoothing of the pointer with a loss timeout.
///
/// With an observation the pointer moves to alpha*obs + (1-alpha)*prev (or
/// jumps to obs when it was absent). Without one it holds its last position
/// until more than `lost_timeout_ms` has passed since it was last seen.
/// Throws ParameterError unless 0 < alpha <= 1.
PointerState update_pointer(const PointerState& prev, std::optional<PointD> observation, double alpha,
                            std::int64_t now_ms, std::int64_t lost_timeout_ms);

/// Maps a pixel position to normalized [0,1]^2 coordinates (pixel centres).
PointD normalize_point(PointD pixel, FrameSize size) noexcept;

enum class GestureEventKind { PointerMoved, PointerLost, HoverStarted, HoverProgress, Selected, HoverCancelled };

std::string_view event_kind_name(GestureEventKind kind) noexcept;

struct GestureEvent {
  GestureEventKind kind = GestureEventKind::PointerMoved;
  std::optional<std::string> region;
  double progress = 0.0;  // HoverProgress only
  std::int64_t timestamp_ms = 0;

  friend bool operator==(const GestureEvent&, const GestureEvent&) = default;
};

struct DwellParams {
  std::int64_t dwell_ms = 800;
  std::int64_t cooldown_ms = 1500;
  double hysteresis_margin = 0.02;  // normalized units
};

/// Hover bookkeeping. `pointer_present` remembers whether the previous update
/// saw a pointer so PointerLost fires once per loss.
struct DwellTracker {
  std::optional<std::string> hovered_region;
  std::int64_t hover_elapsed_ms = 0;
  std::int64_t cooldown_remaining_ms = 0;
  bool pointer_present = false;

  friend bool operator==(const DwellTracker&, const DwellTracker&) = default;
};

struct DwellUpdate {
  DwellTracker tracker;
  std::vector<GestureEvent> events;
};

/// Advances the dwell state machine by `dt_ms`.
///
/// Entering a region emits HoverStarted and starts the hover clock, crediting
/// the current step. Every step spent inside the hovered region (grown by the
/// hysteresis margin) emits HoverProgress; reaching `dwell_ms` with no cooldown
/// left emits Selected, rewinds the clock and arms the cooldown. Cooldown only
/// suppresses Selected. Leaving the region or losing the pointer emits
/// HoverCancelled; losing the pointer also emits PointerLost once.
DwellUpdate update_dwell(const DwellTracker& tracker, const PointerState& pointer, FrameSize frame,
                         const MenuModel& menu, std::int64_t dt_ms, const DwellParams& params,
                         std::int64_t now_ms = 0);

}  // namespace handmenu
