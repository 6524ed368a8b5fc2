#include "handmenu/framesource.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "handmenu/error.hpp"
#include "handmenu/ppm.hpp"

namespace handmenu {

namespace {

using nlohmann::json;

std::int64_t frame_timestamp(std::size_t index, double fps) {
  return static_cast<std::int64_t>(std::llround(static_cast<double>(index) * 1000.0 / fps));
}

Rgb rgb_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw SourceError(std::string(what) + " must be [r, g, b]");
  std::uint8_t c[3];
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer() || j[i].get<int>() < 0 || j[i].get<int>() > 255) {
      throw SourceError(std::string(what) + " channels must be integers in [0, 255]");
    }
    c[i] = static_cast<std::uint8_t>(j[i].get<int>());
  }
  return {c[0], c[1], c[2]};
}

json rgb_to_json(Rgb c) { return json::array({c.r, c.g, c.b}); }

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; })) {
      throw SourceError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

std::uint8_t lerp_byte(std::uint8_t a, std::uint8_t b, double u) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(a + (b - a) * u), 0L, 255L));
}

class SyntheticSource final : public FrameSource {
 public:
  explicit SyntheticSource(SyntheticScript script)
      : script_(std::move(script)), total_(script_.frame_count()), rng_(script_.jitter_seed) {}

  std::optional<Frame> next_frame() override {
    if (index_ >= total_) return std::nullopt;
    const std::int64_t t = frame_timestamp(index_, script_.fps);
    ++index_;

    Frame frame = Frame::filled(script_.width, script_.height, script_.background, t);
    const Keyframe k = interpolate_keyframes(script_.keyframes, static_cast<double>(t));
    PointD c{k.center.x * script_.width, k.center.y * script_.height};
    if (script_.jitter_px > 0.0) {
      std::uniform_real_distribution<double> jitter(-script_.jitter_px, script_.jitter_px);
      c.x += jitter(rng_);
      c.y += jitter(rng_);
    }
    draw_disk(frame, c, k.radius, k.color);
    return frame;
  }

  double fps() const noexcept override { return script_.fps; }

 private:
  SyntheticScript script_;
  std::size_t total_;
  std::size_t index_ = 0;
  std::mt19937_64 rng_;
};

class DirectorySource final : public FrameSource {
 public:
  DirectorySource(std::vector<std::filesystem::path> files, double fps) : files_(std::move(files)), fps_(fps) {}

  std::optional<Frame> next_frame() override {
    if (index_ >= files_.size()) return std::nullopt;
    Frame f = read_ppm(files_[index_]);
    f.set_timestamp_ms(frame_timestamp(index_, fps_));
    ++index_;
    return f;
  }

  double fps() const noexcept override { return fps_; }

 private:
  std::vector<std::filesystem::path> files_;
  double fps_;
  std::size_t index_ = 0;
};

class LatestFrameSource final : public FrameSource {
 public:
  explicit LatestFrameSource(std::unique_ptr<FrameSource> inner) : inner_(std::move(inner)) {
    fps_ = inner_->fps();
    worker_ = std::thread([this] { pump(); });
  }

  ~LatestFrameSource() override {
    {
      std::lock_guard lock(mutex_);
      stopping_ = true;
    }
    ready_.notify_all();
    worker_.join();
  }

  std::optional<Frame> next_frame() override {
    std::unique_lock lock(mutex_);
    ready_.wait(lock, [&] { return latest_.has_value() || finished_; });
    if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
    if (!latest_) return std::nullopt;
    return std::exchange(latest_, std::nullopt);
  }

  double fps() const noexcept override { return fps_; }

 private:
  void pump() {
    for (;;) {
      {
        std::lock_guard lock(mutex_);
        if (stopping_) break;
      }
      std::optional<Frame> f;
      try {
        f = inner_->next_frame();
      } catch (...) {
        std::lock_guard lock(mutex_);
        error_ = std::current_exception();
        finished_ = true;
        ready_.notify_all();
        return;
      }
      std::lock_guard lock(mutex_);
      if (!f) {
        finished_ = true;
        ready_.notify_all();
        return;
      }
      latest_ = std::move(f);  // overwrite: newest frame wins
      ready_.notify_all();
    }
    std::lock_guard lock(mutex_);
    finished_ = true;
    ready_.notify_all();
  }

  std::unique_ptr<FrameSource> inner_;
  double fps_ = 0.0;
  std::mutex mutex_;
  std::condition_variable ready_;
  std::optional<Frame> latest_;
  std::exception_ptr error_;
  bool finished_ = false;
  bool stopping_ = false;
  std::thread worker_;
};

}  // namespace

void SyntheticScript::validate() const {
  if (width < 1 || height < 1) throw SourceError("script: width and height must be >= 1");
  if (!(fps > 0.0 && fps <= 1000.0)) throw SourceError("script: fps must lie in (0, 1000]");
  if (duration_ms < 0) throw SourceError("script: duration_ms must be >= 0");
  if (keyframes.empty()) throw SourceError("script: at least one keyframe is required");
  if (!(jitter_px >= 0.0 && std::isfinite(jitter_px))) throw SourceError("script: jitter_px must be >= 0");
  for (std::size_t i = 0; i < keyframes.size(); ++i) {
    const auto& k = keyframes[i];
    const std::string at = "script: keyframe " + std::to_string(i);
    if (i > 0 && k.t_ms < keyframes[i - 1].t_ms) throw SourceError(at + " is not sorted by t_ms");
    if (!(k.radius > 0.0 && std::isfinite(k.radius))) throw SourceError(at + " radius must be > 0");
    if (!(k.center.x >= 0.0 && k.center.x <= 1.0 && k.center.y >= 0.0 && k.center.y <= 1.0)) {
      throw SourceError(at + " center must lie in [0,1]^2");
    }
  }
}

std::size_t SyntheticScript::frame_count() const noexcept {
  const double exact = static_cast<double>(duration_ms) * fps / 1000.0;
  return static_cast<std::size_t>(std::ceil(exact - 1e-9));
}

SyntheticScript SyntheticScript::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SourceError(std::string("script: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SourceError("script: top level must be an object");
  reject_unknown_keys(j, {"width", "height", "fps", "duration_ms", "background", "keyframes", "jitter_px", "jitter_seed"},
                      "script");
  SyntheticScript s;
  try {
    s.width = j.value("width", s.width);
    s.height = j.value("height", s.height);
    s.fps = j.value("fps", s.fps);
    s.duration_ms = j.value("duration_ms", s.duration_ms);
    if (j.contains("background")) s.background = rgb_from_json(j["background"], "script: background");
    s.jitter_px = j.value("jitter_px", s.jitter_px);
    s.jitter_seed = j.value("jitter_seed", s.jitter_seed);
    if (!j.contains("keyframes") || !j["keyframes"].is_array()) throw SourceError("script: keyframes must be an array");
    for (const auto& k : j["keyframes"]) {
      if (!k.is_object()) throw SourceError("script: keyframe must be an object");
      reject_unknown_keys(k, {"t_ms", "center", "radius", "color"}, "script keyframe");
      Keyframe kf;
      kf.t_ms = k.at("t_ms").get<std::int64_t>();
      const auto& c = k.at("center");
      if (!c.is_array() || c.size() != 2) throw SourceError("script: keyframe center must be [x, y]");
      kf.center = {c[0].get<double>(), c[1].get<double>()};
      kf.radius = k.at("radius").get<double>();
      kf.color = rgb_from_json(k.at("color"), "script: keyframe color");
      s.keyframes.push_back(kf);
    }
  } catch (const json::exception& e) {
    throw SourceError(std::string("script: ") + e.what());
  }
  s.validate();
  return s;
}

SyntheticScript SyntheticScript::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SourceError(path.string() + ": cannot open script");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string SyntheticScript::to_json() const {
  json keys = json::array();
  for (const auto& k : keyframes) {
    keys.push_back({{"t_ms", k.t_ms},
                    {"center", {k.center.x, k.center.y}},
                    {"radius", k.radius},
                    {"color", rgb_to_json(k.color)}});
  }
  json j = {{"width", width},
            {"height", height},
            {"fps", fps},
            {"duration_ms", duration_ms},
            {"background", rgb_to_json(background)},
            {"keyframes", keys},
            {"jitter_px", jitter_px},
            {"jitter_seed", jitter_seed}};
  return j.dump(2);
}

Keyframe interpolate_keyframes(const std::vector<Keyframe>& keyframes, double t_ms) {
  if (keyframes.empty()) throw SourceError("script: at least one keyframe is required");
  if (t_ms <= static_cast<double>(keyframes.front().t_ms)) return keyframes.front();
  if (t_ms >= static_cast<double>(keyframes.back().t_ms)) return keyframes.back();
  const auto after = std::upper_bound(keyframes.begin(), keyframes.end(), t_ms,
                                      [](double t, const Keyframe& k) { return t < static_cast<double>(k.t_ms); });
  const Keyframe& b = *after;
  const Keyframe& a = *(after - 1);
  const double span = static_cast<double>(b.t_ms - a.t_ms);
  const double u = span > 0.0 ? (t_ms - static_cast<double>(a.t_ms)) / span : 1.0;
  Keyframe k;
  k.t_ms = static_cast<std::int64_t>(t_ms);
  k.center = {a.center.x + (b.center.x - a.center.x) * u, a.center.y + (b.center.y - a.center.y) * u};
  k.radius = a.radius + (b.radius - a.radius) * u;
  k.color = {lerp_byte(a.color.r, b.color.r, u), lerp_byte(a.color.g, b.color.g, u), lerp_byte(a.color.b, b.color.b, u)};
  return k;
}

void draw_disk(Frame& frame, PointD center_px, double radius, Rgb color) {
  const double r2 = radius * radius;
  const int y0 = std::max(0, static_cast<int>(std::floor(center_px.y - radius - 1.0)));
  const int y1 = std::min(frame.height() - 1, static_cast<int>(std::ceil(center_px.y + radius + 1.0)));
  const int x0 = std::max(0, static_cast<int>(std::floor(center_px.x - radius - 1.0)));
  const int x1 = std::min(frame.width() - 1, static_cast<int>(std::ceil(center_px.x + radius + 1.0)));
  for (int py = y0; py <= y1; ++py) {
    const double dy = py + 0.5 - center_px.y;
    for (int px = x0; px <= x1; ++px) {
      const double dx = px + 0.5 - center_px.x;
      if (dx * dx + dy * dy <= r2) frame.set(px, py, color);
    }
  }
}

std::unique_ptr<FrameSource> synthetic_source(SyntheticScript script) {
  script.validate();
  return std::make_unique<SyntheticSource>(std::move(script));
}

std::unique_ptr<FrameSource> directory_source(const std::filesystem::path& dir, double fps) {
  if (!(fps > 0.0 && fps <= 1000.0)) throw SourceError("directory source: fps must lie in (0, 1000]");
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw SourceError(dir.string() + ": not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") files.push_back(entry.path());
  }
  if (ec) throw SourceError(dir.string() + ": " + ec.message());
  if (files.empty()) throw SourceError(dir.string() + ": no .ppm files");
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  return std::make_unique<DirectorySource>(std::move(files), fps);
}

std::unique_ptr<FrameSource> latest_frame_source(std::unique_ptr<FrameSource> inner) {
  return std::make_unique<LatestFrameSource>(std::move(inner));
}

std::unique_ptr<FrameSource> open_source(const std::string& spec, double dir_fps) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw SourceError("source '" + spec + "' must be kind:argument");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "synthetic") return synthetic_source(SyntheticScript::load(arg));
  if (kind == "dir") return directory_source(arg, dir_fps);
  if (kind == "camera") {
    CameraRequest req;
    req.device = arg;
    return latest_frame_source(camera_source(req));
  }
  throw SourceError("unknown source kind '" + kind + "' (expected synthetic, dir or camera)");
}

}  // namespace handmenu
