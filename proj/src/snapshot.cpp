#include "handmenu/snapshot.hpp"

namespace handmenu {

using nlohmann::json;

json event_to_json(const GestureEvent& e) {
  json j = {{"kind", std::string(event_kind_name(e.kind))}, {"timestamp_ms", e.timestamp_ms}};
  j["region"] = e.region ? json(*e.region) : json(nullptr);
  if (e.kind == GestureEventKind::HoverProgress) j["progress"] = e.progress;
  return j;
}

json StateSnapshot::to_json() const {
  json blobs_json = json::array();
  for (const auto& b : blobs) {
    blobs_json.push_back({{"label", b.label},
                          {"area", b.area},
                          {"centroid", {b.centroid.x, b.centroid.y}},
                          {"bbox", {b.bbox.x_min, b.bbox.y_min, b.bbox.x_max, b.bbox.y_max}}});
  }
  json events = json::array();
  for (const auto& e : recent_events) events.push_back(event_to_json(e));

  json pointer_json = {{"present", pointer.present}};
  if (pointer.present) {
    pointer_json["x"] = pointer.position.x;
    pointer_json["y"] = pointer.position.y;
  }

  json command = nullptr;
  if (last_command) {
    command = {{"action", std::string(action_name(last_command->action))},
               {"seq", last_command->seq},
               {"sent_at_ms", last_command->sent_at_ms},
               {"acked", last_command->acked}};
    if (last_command->error) command["error"] = *last_command->error;
  }

  return {{"frame_seq", frame_seq},
          {"timestamp_ms", timestamp_ms},
          {"width", size.width},
          {"height", size.height},
          {"blobs", blobs_json},
          {"pointer", pointer_json},
          {"hovered", hovered ? json(*hovered) : json(nullptr)},
          {"dwell_progress", dwell_progress},
          {"events", events},
          {"last_command", command},
          {"latency_us",
           {{"blur", latency_us.blur},
            {"hsv_threshold", latency_us.hsv_threshold},
            {"blobs", latency_us.blobs},
            {"gesture", latency_us.gesture},
            {"total", latency_us.total},
            {"render", latency_us.render}}},
          {"config", config}};
}

}  // namespace handmenu
