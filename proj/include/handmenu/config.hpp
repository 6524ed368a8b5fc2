#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "handmenu/blob.hpp"
#include "handmenu/menu.hpp"
#include "handmenu/pixelops.hpp"

namespace handmenu {

/// Every tunable of the recognition pipeline and its surroundings.
struct PipelineConfig {
  int blur_radius = 1;
  HsvRange hsv_range{90.0, 150.0, 0.4, 1.0, 0.25, 1.0};  // saturated green marker
  std::int64_t min_area = 200;
  Connectivity connectivity = Connectivity::Eight;
  double alpha = 0.4;
  std::int64_t dwell_ms = 800;
  std::int64_t cooldown_ms = 1500;
  double hysteresis_margin = 0.02;
  std::int64_t lost_timeout_ms = 250;
  MenuModel menu = default_menu();
  bool menu_is_default = true;
  std::string player_socket_path;
  std::string listen_address = "127.0.0.1:8765";
  double fps_cap = 0.0;  // 0 = process as fast as frames arrive

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// Full document; unknown keys and out-of-domain values throw ConfigError.
  static PipelineConfig from_json(const nlohmann::json& doc);
  static PipelineConfig parse(const std::string& text);
  static PipelineConfig load(const std::string& path);

  /// Normalized form: every key present, menu as "default" or a region list.
  nlohmann::json to_json() const;
  /// The live-tunable subset, echoed in state snapshots.
  nlohmann::json tunables_json() const;

  /// Merges a partial document of live-tunable keys (hsv_range, dwell_ms,
  /// blur_radius, min_area, alpha) into a copy. Throws ConfigError.
  PipelineConfig with_live_update(const nlohmann::json& patch) const;
};

/// Host and port parsed from "host:port".
struct ListenAddress {
  std::string host;
  unsigned short port = 0;
};
ListenAddress parse_listen_address(const std::string& text);

/// Hands validated live updates from other threads to the frame loop, which
/// adopts them whole at a frame boundary.
class ConfigChannel {
 public:
  explicit ConfigChannel(PipelineConfig initial);

  /// Validates `patch` against the newest config (including pending updates).
  /// Returns the error message on rejection; the config is then untouched.
  std::optional<std::string> request_update(const nlohmann::json& patch);

  /// Frame-loop side: the config to use for the next frame if one is pending.
  std::optional<PipelineConfig> take_pending();

  PipelineConfig latest() const;

 private:
  mutable std::mutex mutex_;
  PipelineConfig latest_;
  bool pending_ = false;
};

}  // namespace handmenu
