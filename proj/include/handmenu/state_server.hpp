#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "handmenu/config.hpp"
#include "handmenu/frame.hpp"
#include "handmenu/pipeline.hpp"

namespace handmenu {

namespace detail {
struct StateServerCore;
}

/// Binary frame message: "FRME", then big-endian u32 width, height and
/// frame_seq, then width*height*3 raw RGB bytes.
std::string encode_frame_message(const Frame& frame, std::uint64_t frame_seq);

struct FrameMessage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t frame_seq = 0;
  std::span<const std::uint8_t> rgb;
};

/// Throws FormatError on a wrong magic or length.
FrameMessage decode_frame_message(std::span<const std::uint8_t> bytes);

/// Handles one client text message ({"set": {...}}) and returns the reply
/// ({"ok":true} or {"ok":false,"error":...}).
std::string handle_control_message(ConfigChannel& channel, std::string_view text);

/// WebSocket broadcast of snapshots and overlay frames.
///
/// Each processed frame goes to every client as a JSON text message followed
/// by a FRME binary message. Clients that fall behind keep at most
/// kClientQueueFrames frames, oldest dropped first. A new client first
/// receives the most recent frame pair. Publishing never blocks the caller.
class StateServer final : public FrameSink {
 public:
  static constexpr std::size_t kClientQueueFrames = 8;

  /// Binds immediately; port 0 picks an ephemeral port. Throws
  /// std::runtime_error when the address cannot be bound.
  StateServer(const std::string& listen_address, std::shared_ptr<ConfigChannel> channel);
  ~StateServer() override;
  StateServer(const StateServer&) = delete;
  StateServer& operator=(const StateServer&) = delete;

  unsigned short port() const noexcept;
  std::size_t client_count() const noexcept;
  /// Frames dropped from slow clients' queues so far.
  std::uint64_t frames_dropped() const noexcept;

  void consume(const StateSnapshot& snapshot, const Frame& overlay) override;
  void stop();

 private:
  std::unique_ptr<detail::StateServerCore> impl_;
};

std::unique_ptr<StateServer> serve_state(const std::string& listen_address, std::shared_ptr<ConfigChannel> channel);

}  // namespace handmenu
