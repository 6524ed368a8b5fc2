#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "handmenu/blob.hpp"
#include "handmenu/control.hpp"
#include "handmenu/gesture.hpp"

namespace handmenu {

/// Microseconds spent per stage on one frame. `total` covers blur through
/// the dwell update; `render` (overlay drawing) is reported separately.
struct StageLatencies {
  std::int64_t blur = 0;
  std::int64_t hsv_threshold = 0;
  std::int64_t blobs = 0;
  std::int64_t gesture = 0;
  std::int64_t total = 0;
  std::int64_t render = 0;
};

/// Everything the UI needs to know about one processed frame.
struct StateSnapshot {
  static constexpr std::size_t kRecentEvents = 32;

  std::uint64_t frame_seq = 0;
  std::int64_t timestamp_ms = 0;
  FrameSize size;
  std::vector<Blob> blobs;
  PointerState pointer;
  std::optional<std::string> hovered;
  double dwell_progress = 0.0;
  std::deque<GestureEvent> recent_events;
  std::optional<CommandRecord> last_command;
  StageLatencies latency_us;
  nlohmann::json config;  // live-tunable subset

  nlohmann::json to_json() const;
};

nlohmann::json event_to_json(const GestureEvent& e);

}  // namespace handmenu
