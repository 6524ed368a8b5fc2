#include "handmenu/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <thread>

#include "handmenu/dispatcher.hpp"
#include "handmenu/error.hpp"
#include "handmenu/log.hpp"
#include "handmenu/pixelops.hpp"
#include "handmenu/ppm.hpp"

namespace handmenu {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t micros(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration_cast<std::chrono::microseconds>(b - a).count();
}

}  // namespace

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) { config_.validate(); }

void Pipeline::reconfigure(PipelineConfig config) {
  config.validate();
  config_ = std::move(config);
  if (tracker_.hovered_region && config_.menu.find(*tracker_.hovered_region) == nullptr) {
    tracker_.hovered_region.reset();
    tracker_.hover_elapsed_ms = 0;
  }
}

Pipeline::Output Pipeline::process(const Frame& frame, std::optional<CommandRecord> last_command, bool render) {
  const auto t0 = Clock::now();
  const Frame blurred = box_blur(frame, config_.blur_radius);
  const auto t1 = Clock::now();
  const BinaryMask mask = threshold_hsv(blurred, config_.hsv_range);
  const auto t2 = Clock::now();
  std::vector<Blob> blobs = filter_blobs(label_components(mask, config_.connectivity), config_.min_area);
  const std::optional<Blob> target = largest_blob(blobs);
  const auto t3 = Clock::now();

  const std::int64_t now = frame.timestamp_ms();
  const std::int64_t dt = last_timestamp_ ? std::max<std::int64_t>(0, now - *last_timestamp_) : 0;
  last_timestamp_ = now;

  const PointerState previous = pointer_;
  pointer_ = update_pointer(previous, target ? std::optional<PointD>(target->centroid) : std::nullopt, config_.alpha,
                            now, config_.lost_timeout_ms);

  Output out{StateSnapshot{}, frame, {}, {}};
  if (pointer_.present && (!previous.present || previous.position != pointer_.position)) {
    out.events.push_back(GestureEvent{GestureEventKind::PointerMoved, std::nullopt, 0.0, now});
  }
  const DwellParams params{config_.dwell_ms, config_.cooldown_ms, config_.hysteresis_margin};
  DwellUpdate dwell = update_dwell(tracker_, pointer_, frame.size(), config_.menu, dt, params, now);
  tracker_ = std::move(dwell.tracker);
  for (auto& e : dwell.events) {
    if (e.kind == GestureEventKind::Selected && e.region) {
      if (const auto* region = config_.menu.find(*e.region)) out.selections.push_back(region->action);
    }
    out.events.push_back(std::move(e));
  }
  const auto t4 = Clock::now();

  for (const auto& e : out.events) {
    recent_.push_back(e);
    if (recent_.size() > StateSnapshot::kRecentEvents) recent_.pop_front();
  }

  StateSnapshot& s = out.snapshot;
  s.frame_seq = next_seq_++;
  s.timestamp_ms = now;
  s.size = frame.size();
  s.blobs = std::move(blobs);
  s.pointer = pointer_;
  s.hovered = tracker_.hovered_region;
  s.dwell_progress =
      tracker_.hovered_region ? static_cast<double>(tracker_.hover_elapsed_ms) / static_cast<double>(config_.dwell_ms)
                              : 0.0;
  s.recent_events = recent_;
  s.last_command = std::move(last_command);
  s.config = config_.tunables_json();
  s.latency_us = {micros(t0, t1), micros(t1, t2), micros(t2, t3), micros(t3, t4), micros(t0, t4), 0};

  if (render) {
    const auto r0 = Clock::now();
    OverlaySpec spec;
    spec.menu = config_.menu;
    if (pointer_.present) spec.pointer = pointer_.position;
    spec.hovered = tracker_.hovered_region;
    spec.dwell_progress = std::clamp(s.dwell_progress, 0.0, 1.0);
    for (const auto& b : s.blobs) spec.blobs.push_back(b.bbox);
    out.overlay = render_overlay(frame, spec);
    s.latency_us.render = micros(r0, Clock::now());
  }
  return out;
}

FrameDumpSink::FrameDumpSink(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void FrameDumpSink::consume(const StateSnapshot& snapshot, const Frame& overlay) {
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%06llu.ppm", static_cast<unsigned long long>(snapshot.frame_seq));
  write_ppm(dir_ / name, overlay);
  ++written_;
}

RunReport run_pipeline(const PipelineConfig& config, FrameSource& source, std::span<FrameSink* const> sinks,
                       const RunOptions& options) {
  RunReport report;
  std::unique_ptr<CommandDispatcher> dispatcher;
  if (!config.player_socket_path.empty()) dispatcher = std::make_unique<CommandDispatcher>(config.player_socket_path);

  std::optional<Pipeline> pipeline;
  try {
    pipeline.emplace(config);
  } catch (const std::exception& e) {
    log::error(std::string("invalid pipeline config: ") + e.what());
    report.exit_status = 2;
    return report;
  }

  const bool render = options.render && !sinks.empty();
  auto next_slot = Clock::now();
  for (;;) {
    if (options.stop != nullptr && options.stop->load()) break;
    if (options.channel) {
      if (auto updated = options.channel->take_pending()) pipeline->reconfigure(std::move(*updated));
    }

    std::optional<Frame> frame;
    try {
      frame = source.next_frame();
    } catch (const std::exception& e) {
      log::error(std::string("frame source failed: ") + e.what());
      report.exit_status = 1;
      break;
    }
    if (!frame) break;

    std::optional<Pipeline::Output> out;
    try {
      out = pipeline->process(*frame, dispatcher ? dispatcher->last() : std::nullopt, render);
    } catch (const std::exception& e) {
      log::error(std::string("frame processing failed: ") + e.what());
      report.exit_status = 1;
      break;
    }
    ++report.frames;

    for (const auto& e : out->events) {
      if (e.kind == GestureEventKind::Selected) report.selections.push_back(e);
    }
    for (const PlayerAction a : out->selections) {
      log::info("selected '" + std::string(action_name(a)) + "'");
      if (dispatcher) dispatcher->enqueue(a);
    }
    for (FrameSink* sink : sinks) {
      try {
        sink->consume(out->snapshot, out->overlay);
      } catch (const std::exception& e) {
        log::warn(std::string("sink failed: ") + e.what());
      }
    }

    const double cap = pipeline->config().fps_cap;
    if (cap > 0.0) {
      next_slot += std::chrono::microseconds(static_cast<std::int64_t>(1e6 / cap));
      const auto now = Clock::now();
      if (next_slot > now) {
        std::this_thread::sleep_until(next_slot);
      } else {
        next_slot = now;
      }
    }
  }

  if (dispatcher) {
    dispatcher->stop();
    report.commands = dispatcher->history();
  }
  return report;
}

}  // namespace handmenu
