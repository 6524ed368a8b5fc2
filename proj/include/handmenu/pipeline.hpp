#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "handmenu/config.hpp"
#include "handmenu/control.hpp"
#include "handmenu/framesource.hpp"
#include "handmenu/gesture.hpp"
#include "handmenu/snapshot.hpp"

namespace handmenu {

/// All recognition state for one stream: blur -> HSV threshold -> blobs ->
/// pointer smoothing -> dwell selection. Not thread-safe; one owner drives it.
class Pipeline {
 public:
  struct Output {
    StateSnapshot snapshot;
    Frame overlay;
    std::vector<GestureEvent> events;
    std::vector<PlayerAction> selections;
  };

  explicit Pipeline(PipelineConfig config);

  /// Processes one frame. Throws ParameterError when the frame is too small
  /// for the configured blur radius.
  Output process(const Frame& frame, std::optional<CommandRecord> last_command = std::nullopt,
                 bool render = true);

  /// Replaces the configuration between frames; recognition state is kept.
  void reconfigure(PipelineConfig config);

  const PipelineConfig& config() const noexcept { return config_; }
  const PointerState& pointer() const noexcept { return pointer_; }
  const DwellTracker& tracker() const noexcept { return tracker_; }

 private:
  PipelineConfig config_;
  PointerState pointer_;
  DwellTracker tracker_;
  std::deque<GestureEvent> recent_;
  std::optional<std::int64_t> last_timestamp_;
  std::uint64_t next_seq_ = 0;
};

/// Receives each processed frame. Implementations must not block the loop.
class FrameSink {
 public:
  virtual ~FrameSink() = default;
  virtual void consume(const StateSnapshot& snapshot, const Frame& overlay) = 0;
};

/// Writes overlay frames as frame_%06d.ppm (numbered by frame_seq).
class FrameDumpSink final : public FrameSink {
 public:
  explicit FrameDumpSink(std::filesystem::path dir);
  void consume(const StateSnapshot& snapshot, const Frame& overlay) override;
  std::size_t written() const noexcept { return written_; }

 private:
  std::filesystem::path dir_;
  std::size_t written_ = 0;
};

struct RunOptions {
  /// Shared with a state server so its set requests reach the loop.
  std::shared_ptr<ConfigChannel> channel;
  /// Set from another thread (or a signal handler) to end the run early.
  const std::atomic<bool>* stop = nullptr;
  /// Skip overlay rendering when no sink wants pixels.
  bool render = true;
};

struct RunReport {
  int exit_status = 0;
  std::size_t frames = 0;
  std::vector<CommandRecord> commands;
  std::vector<GestureEvent> selections;
};

/// Drives `source` through a Pipeline until it ends or `options.stop` is set.
/// Selected events become player commands on a background dispatcher when
/// config.player_socket_path is set; queued commands are flushed before
/// returning. A source failure ends the run with a nonzero exit status.
RunReport run_pipeline(const PipelineConfig& config, FrameSource& source, std::span<FrameSink* const> sinks,
                       const RunOptions& options = {});

}  // namespace handmenu
