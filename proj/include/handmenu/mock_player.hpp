#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "handmenu/action.hpp"

namespace handmenu {

struct MockPlayerOptions {
  /// Record commands but never answer them.
  bool drop_replies = false;
  /// Close the first connection after this many lines have been handled.
  std::optional<int> close_after;
};

struct MockPlayerEntry {
  std::optional<PlayerAction> action;  // absent for protocol violations
  std::uint64_t seq = 0;
  std::int64_t received_at_ms = 0;  // steady clock, relative to player start
  bool violation = false;
  std::string raw;
};

/// In-process stand-in for a media player listening on a local socket.
/// Connections are served one at a time; each valid line is recorded and
/// answered with {"seq":n,"ok":true}.
class MockPlayer {
 public:
  /// Throws TransportError when the path is taken or cannot be bound.
  explicit MockPlayer(std::filesystem::path path, MockPlayerOptions options = {});
  ~MockPlayer();
  MockPlayer(const MockPlayer&) = delete;
  MockPlayer& operator=(const MockPlayer&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

  std::vector<PlayerAction> actions() const;
  std::vector<MockPlayerEntry> entries() const;
  std::size_t connections_accepted() const noexcept { return accepted_.load(); }

  void set_drop_replies(bool drop) noexcept { drop_replies_.store(drop); }

  /// Blocks until at least `count` entries were recorded or `timeout` passes.
  bool wait_for_entries(std::size_t count, std::chrono::milliseconds timeout) const;

  void stop();

 private:
  void serve();
  void handle_line(int client_fd, const std::string& line);

  std::filesystem::path path_;
  MockPlayerOptions options_;
  std::atomic<bool> drop_replies_;
  std::atomic<bool> stopping_{false};
  std::atomic<std::size_t> accepted_{0};
  int listen_fd_ = -1;
  std::chrono::steady_clock::time_point started_;
  mutable std::mutex mutex_;
  std::vector<MockPlayerEntry> entries_;
  std::thread worker_;
};

std::unique_ptr<MockPlayer> mock_player(const std::filesystem::path& path, MockPlayerOptions options = {});

}  // namespace handmenu
