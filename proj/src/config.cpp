#include "handmenu/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "handmenu/error.hpp"

namespace handmenu {

namespace {

using nlohmann::json;

constexpr int kMaxBlurRadius = 32;
constexpr std::int64_t kMaxMillis = 600'000;

const char* const kAllKeys[] = {"blur_radius",     "hsv_range",          "min_area",       "connectivity",
                                "alpha",           "dwell_ms",           "cooldown_ms",    "hysteresis_margin",
                                "lost_timeout_ms", "menu",               "player_socket_path", "listen_address",
                                "fps_cap"};
const char* const kLiveKeys[] = {"hsv_range", "dwell_ms", "blur_radius", "min_area", "alpha"};
const char* const kHsvKeys[] = {"h_lo", "h_hi", "s_lo", "s_hi", "v_lo", "v_hi"};

template <std::size_t N>
bool one_of(const std::string& key, const char* const (&keys)[N]) {
  return std::any_of(std::begin(keys), std::end(keys), [&](const char* k) { return key == k; });
}

[[noreturn]] void fail(const std::string& field, const std::string& why) { throw ConfigError(field + ": " + why); }

std::int64_t read_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    fail(field, "integer out of range");
  }
  return v.get<std::int64_t>();
}

double read_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::string read_string(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

void apply_hsv(HsvRange& range, const json& v) {
  if (!v.is_object()) fail("hsv_range", "expected an object");
  for (const auto& [key, value] : v.items()) {
    if (!one_of(key, kHsvKeys)) fail("hsv_range." + key, "unknown key");
    const double x = read_number(value, "hsv_range." + key);
    if (key == "h_lo") range.h_lo = x;
    if (key == "h_hi") range.h_hi = x;
    if (key == "s_lo") range.s_lo = x;
    if (key == "s_hi") range.s_hi = x;
    if (key == "v_lo") range.v_lo = x;
    if (key == "v_hi") range.v_hi = x;
  }
}

MenuModel read_menu(const json& v) {
  if (!v.is_array()) fail("menu", "expected \"default\" or an array of regions");
  std::vector<MenuRegion> regions;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = "menu[" + std::to_string(i) + "]";
    const json& r = v[i];
    if (!r.is_object()) fail(at, "expected an object");
    for (const auto& [key, value] : r.items()) {
      if (key != "id" && key != "action" && key != "rect" && key != "caption") fail(at + "." + key, "unknown key");
    }
    if (!r.contains("id") || !r.contains("action") || !r.contains("rect")) fail(at, "requires id, action and rect");
    MenuRegion region;
    region.id = read_string(r["id"], at + ".id");
    const std::string action = read_string(r["action"], at + ".action");
    const auto parsed = action_from_name(action);
    if (!parsed) fail(at + ".action", "unknown action '" + action + "'");
    region.action = *parsed;
    const json& rect = r["rect"];
    if (!rect.is_array() || rect.size() != 4) fail(at + ".rect", "expected [x0, y0, x1, y1]");
    region.rect = {read_number(rect[0], at + ".rect"), read_number(rect[1], at + ".rect"),
                   read_number(rect[2], at + ".rect"), read_number(rect[3], at + ".rect")};
    region.caption = r.contains("caption") ? read_string(r["caption"], at + ".caption") : region.id;
    regions.push_back(std::move(region));
  }
  try {
    return MenuModel(std::move(regions));
  } catch (const ParameterError& e) {
    fail("menu", e.what());
  }
}

json menu_to_json(const MenuModel& menu) {
  json out = json::array();
  for (const auto& r : menu.regions()) {
    out.push_back({{"id", r.id},
                   {"action", std::string(action_name(r.action))},
                   {"rect", {r.rect.x0, r.rect.y0, r.rect.x1, r.rect.y1}},
                   {"caption", r.caption}});
  }
  return out;
}

json hsv_to_json(const HsvRange& r) {
  return {{"h_lo", r.h_lo}, {"h_hi", r.h_hi}, {"s_lo", r.s_lo}, {"s_hi", r.s_hi}, {"v_lo", r.v_lo}, {"v_hi", r.v_hi}};
}

void apply_field(PipelineConfig& c, const std::string& key, const json& v) {
  if (key == "blur_radius") {
    c.blur_radius = static_cast<int>(std::clamp<std::int64_t>(read_int(v, key), -1, kMaxBlurRadius + 1));
  } else if (key == "hsv_range") {
    apply_hsv(c.hsv_range, v);
  } else if (key == "min_area") {
    c.min_area = read_int(v, key);
  } else if (key == "connectivity") {
    const auto n = read_int(v, key);
    if (n != 4 && n != 8) fail(key, "must be 4 or 8");
    c.connectivity = n == 4 ? Connectivity::Four : Connectivity::Eight;
  } else if (key == "alpha") {
    c.alpha = read_number(v, key);
  } else if (key == "dwell_ms") {
    c.dwell_ms = read_int(v, key);
  } else if (key == "cooldown_ms") {
    c.cooldown_ms = read_int(v, key);
  } else if (key == "hysteresis_margin") {
    c.hysteresis_margin = read_number(v, key);
  } else if (key == "lost_timeout_ms") {
    c.lost_timeout_ms = read_int(v, key);
  } else if (key == "menu") {
    if (v.is_string()) {
      if (v.get<std::string>() != "default") fail(key, "the only named layout is \"default\"");
      c.menu = default_menu();
      c.menu_is_default = true;
    } else {
      c.menu = read_menu(v);
      c.menu_is_default = false;
    }
  } else if (key == "player_socket_path") {
    c.player_socket_path = read_string(v, key);
  } else if (key == "listen_address") {
    c.listen_address = read_string(v, key);
  } else if (key == "fps_cap") {
    c.fps_cap = read_number(v, key);
  } else {
    fail(key, "unknown key");
  }
}

void check(bool ok, const std::string& field, const std::string& why) {
  if (!ok) fail(field, why);
}

}  // namespace

void PipelineConfig::validate() const {
  check(blur_radius >= 0 && blur_radius <= kMaxBlurRadius, "blur_radius",
        "must be an integer in [0, " + std::to_string(kMaxBlurRadius) + "]");
  try {
    hsv_range.validate();
  } catch (const ParameterError& e) {
    fail("hsv_range", e.what());
  }
  check(min_area >= 1 && min_area <= 100'000'000, "min_area", "must be an integer in [1, 1e8]");
  check(alpha > 0.0 && alpha <= 1.0, "alpha", "must lie in (0, 1]");
  check(dwell_ms >= 1 && dwell_ms <= kMaxMillis, "dwell_ms", "must be an integer in [1, 600000]");
  check(cooldown_ms >= 0 && cooldown_ms <= kMaxMillis, "cooldown_ms", "must be an integer in [0, 600000]");
  check(hysteresis_margin >= 0.0 && hysteresis_margin <= 0.25, "hysteresis_margin", "must lie in [0, 0.25]");
  check(lost_timeout_ms >= 0 && lost_timeout_ms <= kMaxMillis, "lost_timeout_ms",
        "must be an integer in [0, 600000]");
  check(fps_cap >= 0.0 && fps_cap <= 1000.0, "fps_cap", "must lie in [0, 1000]");
  check(player_socket_path.size() < 108, "player_socket_path", "longer than a local socket path allows");
  if (!listen_address.empty()) {
    try {
      parse_listen_address(listen_address);
    } catch (const ConfigError& e) {
      fail("listen_address", e.what());
    }
  }
}

PipelineConfig PipelineConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  PipelineConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (!one_of(key, kAllKeys)) fail(key, "unknown key");
    apply_field(c, key, value);
  }
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::parse(const std::string& text) {
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config: not valid JSON");
  return from_json(doc);
}

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json PipelineConfig::to_json() const {
  return {{"blur_radius", blur_radius},
          {"hsv_range", hsv_to_json(hsv_range)},
          {"min_area", min_area},
          {"connectivity", connectivity == Connectivity::Four ? 4 : 8},
          {"alpha", alpha},
          {"dwell_ms", dwell_ms},
          {"cooldown_ms", cooldown_ms},
          {"hysteresis_margin", hysteresis_margin},
          {"lost_timeout_ms", lost_timeout_ms},
          {"menu", menu_is_default ? json("default") : menu_to_json(menu)},
          {"player_socket_path", player_socket_path},
          {"listen_address", listen_address},
          {"fps_cap", fps_cap}};
}

json PipelineConfig::tunables_json() const {
  return {{"hsv_range", hsv_to_json(hsv_range)},
          {"dwell_ms", dwell_ms},
          {"blur_radius", blur_radius},
          {"min_area", min_area},
          {"alpha", alpha}};
}

PipelineConfig PipelineConfig::with_live_update(const json& patch) const {
  if (!patch.is_object()) throw ConfigError("set: expected an object of tunables");
  if (patch.empty()) throw ConfigError("set: no fields given");
  PipelineConfig next = *this;
  for (const auto& [key, value] : patch.items()) {
    if (!one_of(key, kLiveKeys)) {
      fail(key, one_of(key, kAllKeys) ? "not live-tunable" : "unknown key");
    }
    apply_field(next, key, value);
  }
  next.validate();
  return next;
}

ListenAddress parse_listen_address(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw ConfigError("'" + text + "' must be host:port");
  ListenAddress out;
  out.host = text.substr(0, colon);
  const std::string port = text.substr(colon + 1);
  if (port.empty() || port.size() > 5 || !std::all_of(port.begin(), port.end(), ::isdigit)) {
    throw ConfigError("'" + text + "' has an invalid port");
  }
  const int p = std::stoi(port);
  if (p > 65535) throw ConfigError("'" + text + "' port exceeds 65535");
  out.port = static_cast<unsigned short>(p);
  if (out.host.empty()) out.host = "0.0.0.0";
  return out;
}

ConfigChannel::ConfigChannel(PipelineConfig initial) : latest_(std::move(initial)) {}

std::optional<std::string> ConfigChannel::request_update(const json& patch) {
  std::lock_guard lock(mutex_);
  try {
    latest_ = latest_.with_live_update(patch);
  } catch (const ConfigError& e) {
    return std::string(e.what());
  } catch (const json::exception& e) {
    return std::string("set: ") + e.what();
  }
  pending_ = true;
  return std::nullopt;
}

std::optional<PipelineConfig> ConfigChannel::take_pending() {
  std::lock_guard lock(mutex_);
  if (!pending_) return std::nullopt;
  pending_ = false;
  return latest_;
}

PipelineConfig ConfigChannel::latest() const {
  std::lock_guard lock(mutex_);
  return latest_;
}

}  // namespace handmenu
