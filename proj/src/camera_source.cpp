#include <algorithm>
#include <cctype>
#include <chrono>

#include "handmenu/error.hpp"
#include "handmenu/framesource.hpp"

#ifdef HANDMENU_HAVE_OPENCV
#include <opencv2/core.hpp>
#include <opencv2/videoio.hpp>
#endif

namespace handmenu {

#ifdef HANDMENU_HAVE_OPENCV

namespace {

class CameraSource final : public FrameSource {
 public:
  explicit CameraSource(const CameraRequest& req) {
    const bool numeric = !req.device.empty() && std::all_of(req.device.begin(), req.device.end(),
                                                             [](unsigned char c) { return std::isdigit(c); });
    const bool opened = numeric ? capture_.open(std::stoi(req.device)) : capture_.open(req.device);
    if (!opened || !capture_.isOpened()) throw SourceError("camera '" + req.device + "': cannot open device");
    capture_.set(cv::CAP_PROP_FRAME_WIDTH, req.width);
    capture_.set(cv::CAP_PROP_FRAME_HEIGHT, req.height);
    capture_.set(cv::CAP_PROP_FPS, req.fps);
    const double negotiated = capture_.get(cv::CAP_PROP_FPS);
    fps_ = negotiated > 0.0 ? negotiated : req.fps;
    start_ = std::chrono::steady_clock::now();
  }

  std::optional<Frame> next_frame() override {
    if (ended_) return std::nullopt;
    cv::Mat bgr;
    if (!capture_.read(bgr) || bgr.empty() || bgr.type() != CV_8UC3) {
      ended_ = true;
      return std::nullopt;
    }
    Frame frame(bgr.cols, bgr.rows);
    auto px = frame.pixels();
    for (int y = 0; y < bgr.rows; ++y) {
      const auto* row = bgr.ptr<std::uint8_t>(y);
      auto* dst = px.data() + static_cast<std::size_t>(y) * bgr.cols * 3;
      for (int x = 0; x < bgr.cols; ++x) {
        dst[3 * x] = row[3 * x + 2];
        dst[3 * x + 1] = row[3 * x + 1];
        dst[3 * x + 2] = row[3 * x];
      }
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
    last_ts_ = std::max<std::int64_t>(elapsed.count(), last_ts_ + 1);
    frame.set_timestamp_ms(last_ts_);
    return frame;
  }

  double fps() const noexcept override { return fps_; }

 private:
  cv::VideoCapture capture_;
  double fps_ = 30.0;
  std::chrono::steady_clock::time_point start_;
  std::int64_t last_ts_ = -1;
  bool ended_ = false;
};

}  // namespace

std::unique_ptr<FrameSource> camera_source(const CameraRequest& request) {
  return std::make_unique<CameraSource>(request);
}

#else

std::unique_ptr<FrameSource> camera_source(const CameraRequest& request) {
  throw SourceError("camera '" + request.device + "': built without camera support (OpenCV not found)");
}

#endif

}  // namespace handmenu
