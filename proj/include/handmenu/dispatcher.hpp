#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "handmenu/control.hpp"

namespace handmenu {

/// Delivers player commands off the frame loop. Commands wait in a bounded
/// queue (drop-oldest on overflow) and are sent in order by one worker thread.
/// Transport and protocol failures are logged and recorded, never thrown.
class CommandDispatcher {
 public:
  static constexpr std::size_t kQueueCapacity = 32;

  explicit CommandDispatcher(std::string socket_path,
                             std::chrono::milliseconds reply_timeout = std::chrono::milliseconds(500));
  ~CommandDispatcher();
  CommandDispatcher(const CommandDispatcher&) = delete;
  CommandDispatcher& operator=(const CommandDispatcher&) = delete;

  /// Never blocks. Returns false when the queue was full and its oldest
  /// command was discarded to make room.
  bool enqueue(PlayerAction action);

  /// Sends whatever is still queued, then joins the worker.
  void stop();

  /// Blocks until the queue is empty and no command is in flight.
  void wait_idle();

  std::vector<CommandRecord> history() const;
  std::optional<CommandRecord> last() const;
  std::size_t pending() const;
  std::size_t dropped() const;

 private:
  void run();

  PlayerConnection connection_;
  mutable std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable idle_;
  std::deque<PlayerAction> queue_;
  std::vector<CommandRecord> history_;
  std::size_t dropped_ = 0;
  bool busy_ = false;
  bool stopping_ = false;
  std::thread worker_;
};

}  // namespace handmenu
