#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "handmenu/frame.hpp"

namespace handmenu {

/// Pull-based supply of frames with strictly increasing timestamps. Once
/// next_frame() returns nullopt, every later call does too.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::optional<Frame> next_frame() = 0;
  virtual double fps() const noexcept = 0;
};

struct Keyframe {
  std::int64_t t_ms = 0;
  PointD center;  // normalized
  double radius = 1.0;  // pixels
  Rgb color;
};

/// Filled disk moving over a flat background, linearly interpolated between
/// keyframes. Optional seeded jitter offsets the disk centre each frame by a
/// uniform draw in [-jitter_px, jitter_px] per axis.
struct SyntheticScript {
  int width = 640;
  int height = 480;
  double fps = 30.0;
  std::int64_t duration_ms = 1000;
  Rgb background;
  std::vector<Keyframe> keyframes;
  double jitter_px = 0.0;
  std::uint64_t jitter_seed = 0;

  /// Throws SourceError naming the first violated invariant.
  void validate() const;

  std::size_t frame_count() const noexcept;

  /// Parses the JSON form used by `--source synthetic:<file>`.
  static SyntheticScript from_json(const std::string& text);
  static SyntheticScript load(const std::filesystem::path& path);
  std::string to_json() const;
};

/// Disk parameters at time t (clamped to the first/last keyframe outside
/// their span), before jitter.
Keyframe interpolate_keyframes(const std::vector<Keyframe>& keyframes, double t_ms);

/// Pixel (px, py) belongs to the disk iff its centre (px+0.5, py+0.5) lies
/// within `radius` of (cx, cy), all in pixel units.
void draw_disk(Frame& frame, PointD center_px, double radius, Rgb color);

std::unique_ptr<FrameSource> synthetic_source(SyntheticScript script);

/// Every *.ppm file in `dir`, lexicographic order, at 1000/fps ms spacing.
/// Throws SourceError when the directory holds none; malformed files raise
/// FormatError naming the file when reached.
std::unique_ptr<FrameSource> directory_source(const std::filesystem::path& dir, double fps);

struct CameraRequest {
  std::string device = "0";  // integer index or device path
  int width = 640;
  int height = 480;
  double fps = 30.0;
};

/// Live capture device. Throws SourceError when the device cannot be opened
/// or camera support was not compiled in.
std::unique_ptr<FrameSource> camera_source(const CameraRequest& request);

/// Wraps a live source so a slow consumer always gets the newest frame;
/// intermediate frames are dropped. Capture runs on a background thread.
std::unique_ptr<FrameSource> latest_frame_source(std::unique_ptr<FrameSource> inner);

/// Parses "synthetic:<file>", "dir:<path>" or "camera:<id>".
std::unique_ptr<FrameSource> open_source(const std::string& spec, double dir_fps = 30.0);

}  // namespace handmenu
