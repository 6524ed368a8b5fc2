#include "handmenu/dispatcher.hpp"

#include "handmenu/error.hpp"
#include "handmenu/log.hpp"

namespace handmenu {

CommandDispatcher::CommandDispatcher(std::string socket_path, std::chrono::milliseconds reply_timeout)
    : connection_(std::move(socket_path), reply_timeout) {
  worker_ = std::thread([this] { run(); });
}

CommandDispatcher::~CommandDispatcher() { stop(); }

bool CommandDispatcher::enqueue(PlayerAction action) {
  bool kept_all = true;
  {
    std::lock_guard lock(mutex_);
    if (queue_.size() >= kQueueCapacity) {
      log::warn("command queue full, dropping oldest command '" + std::string(action_name(queue_.front())) + "'");
      queue_.pop_front();
      ++dropped_;
      kept_all = false;
    }
    queue_.push_back(action);
  }
  wake_.notify_one();
  return kept_all;
}

void CommandDispatcher::stop() {
  {
    std::lock_guard lock(mutex_);
    if (stopping_ && !worker_.joinable()) return;
    stopping_ = true;
  }
  wake_.notify_all();
  if (worker_.joinable()) worker_.join();
}

void CommandDispatcher::wait_idle() {
  std::unique_lock lock(mutex_);
  idle_.wait(lock, [&] { return queue_.empty() && !busy_; });
}

std::vector<CommandRecord> CommandDispatcher::history() const {
  std::lock_guard lock(mutex_);
  return history_;
}

std::optional<CommandRecord> CommandDispatcher::last() const {
  std::lock_guard lock(mutex_);
  if (history_.empty()) return std::nullopt;
  return history_.back();
}

std::size_t CommandDispatcher::pending() const {
  std::lock_guard lock(mutex_);
  return queue_.size();
}

std::size_t CommandDispatcher::dropped() const {
  std::lock_guard lock(mutex_);
  return dropped_;
}

void CommandDispatcher::run() {
  for (;;) {
    PlayerAction action;
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (queue_.empty()) break;  // stopping and drained
      action = queue_.front();
      queue_.pop_front();
      busy_ = true;
    }

    CommandRecord record;
    try {
      record = dispatch(action, connection_);
      if (!record.acked) log::warn("command '" + std::string(action_name(action)) + "' not acknowledged: " +
                                   record.error.value_or("unknown"));
    } catch (const ProtocolError& e) {
      record.action = action;
      record.error = std::string(e.what()) + " (raw: " + e.raw_line() + ")";
      log::error("player protocol error: " + *record.error);
    } catch (const TransportError& e) {
      record.action = action;
      record.error = e.what();
      log::error(std::string("player transport error: ") + e.what());
    }

    {
      std::lock_guard lock(mutex_);
      history_.push_back(std::move(record));
      busy_ = false;
    }
    idle_.notify_all();
  }
  std::lock_guard lock(mutex_);
  busy_ = false;
  idle_.notify_all();
}

}  // namespace handmenu
