#include "handmenu/gesture.hpp"

#include <algorithm>
#include <cmath>

#include "handmenu/error.hpp"

namespace handmenu {

PointerState update_pointer(const PointerState& prev, std::optional<PointD> observation, double alpha,
                            std::int64_t now_ms, std::int64_t lost_timeout_ms) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");

  PointerState next = prev;
  if (observation) {
    if (prev.present) {
      next.position = {alpha * observation->x + (1.0 - alpha) * prev.position.x,
                       alpha * observation->y + (1.0 - alpha) * prev.position.y};
    } else {
      next.position = *observation;
    }
    next.present = true;
    next.last_seen_ms = now_ms;
  } else if (prev.present && now_ms - prev.last_seen_ms > lost_timeout_ms) {
    next.present = false;
  }
  return next;
}

PointD normalize_point(PointD pixel, FrameSize size) noexcept {
  return {std::clamp((pixel.x + 0.5) / size.width, 0.0, 1.0), std::clamp((pixel.y + 0.5) / size.height, 0.0, 1.0)};
}

std::string_view event_kind_name(GestureEventKind kind) noexcept {
  switch (kind) {
    case GestureEventKind::PointerMoved:
      return "pointer_moved";
    case GestureEventKind::PointerLost:
      return "pointer_lost";
    case GestureEventKind::HoverStarted:
      return "hover_started";
    case GestureEventKind::HoverProgress:
      return "hover_progress";
    case GestureEventKind::Selected:
      return "selected";
    case GestureEventKind::HoverCancelled:
      return "hover_cancelled";
  }
  return "unknown";
}

DwellUpdate update_dwell(const DwellTracker& tracker, const PointerState& pointer, FrameSize frame,
                         const MenuModel& menu, std::int64_t dt_ms, const DwellParams& params,
                         std::int64_t now_ms) {
  if (dt_ms < 0) throw ParameterError("dt_ms must be non-negative");
  if (params.dwell_ms <= 0) throw ParameterError("dwell_ms must be positive");

  DwellUpdate out{tracker, {}};
  DwellTracker& t = out.tracker;
  auto emit = [&](GestureEventKind kind, std::optional<std::string> region, double progress = 0.0) {
    out.events.push_back(GestureEvent{kind, std::move(region), progress, now_ms});
  };

  t.cooldown_remaining_ms = std::max<std::int64_t>(0, t.cooldown_remaining_ms - dt_ms);

  if (!pointer.present) {
    if (t.hovered_region) emit(GestureEventKind::HoverCancelled, t.hovered_region);
    if (t.pointer_present) emit(GestureEventKind::PointerLost, std::nullopt);
    t.hovered_region.reset();
    t.hover_elapsed_ms = 0;
    t.pointer_present = false;
    return out;
  }
  t.pointer_present = true;

  const auto hit = hit_test(menu, normalize_point(pointer.position, frame), t.hovered_region,
                            params.hysteresis_margin);

  if (t.hovered_region && hit != t.hovered_region) {
    emit(GestureEventKind::HoverCancelled, t.hovered_region);
    t.hovered_region.reset();
    t.hover_elapsed_ms = 0;
  }
  if (!hit) return out;

  if (!t.hovered_region) {
    t.hovered_region = hit;
    t.hover_elapsed_ms = 0;
    emit(GestureEventKind::HoverStarted, hit);
  }

  t.hover_elapsed_ms = std::min(t.hover_elapsed_ms + dt_ms, params.dwell_ms);
  const double progress = static_cast<double>(t.hover_elapsed_ms) / static_cast<double>(params.dwell_ms);
  emit(GestureEventKind::HoverProgress, hit, progress);

  if (t.hover_elapsed_ms >= params.dwell_ms && t.cooldown_remaining_ms == 0) {
    emit(GestureEventKind::Selected, hit);
    t.hover_elapsed_ms = 0;
    t.cooldown_remaining_ms = params.cooldown_ms;
  }
  return out;
}

}  // namespace handmenu
