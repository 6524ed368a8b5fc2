#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "handmenu/action.hpp"

namespace handmenu {

struct CommandRecord {
  PlayerAction action = PlayerAction::PlayPause;
  std::uint64_t seq = 0;
  std::int64_t sent_at_ms = 0;  // wall clock, ms since epoch
  bool acked = false;
  std::optional<std::string> error;
};

/// `{"action":"<name>","seq":<n>}\n`
std::string encode_command(PlayerAction action, std::uint64_t seq);

struct DecodedCommand {
  PlayerAction action;
  std::uint64_t seq;
};

/// Inverse of encode_command (the trailing newline is optional). Throws
/// ProtocolError carrying the raw line.
DecodedCommand decode_command(std::string_view line);

/// `{"seq":<n>,"ok":true|false}\n`
std::string encode_reply(std::uint64_t seq, bool ok);

struct PlayerReply {
  std::uint64_t seq;
  bool ok;
};

PlayerReply decode_reply(std::string_view line);

/// Client end of the player's local stream socket. Sequence numbers are owned
/// here and keep increasing across reconnects.
class PlayerConnection {
 public:
  explicit PlayerConnection(std::string socket_path,
                            std::chrono::milliseconds reply_timeout = std::chrono::milliseconds(500));
  ~PlayerConnection();
  PlayerConnection(const PlayerConnection&) = delete;
  PlayerConnection& operator=(const PlayerConnection&) = delete;

  /// Throws TransportError when nothing listens on the path.
  void connect();
  void close() noexcept;
  bool connected() const noexcept { return fd_ >= 0; }

  /// Throws TransportError when the peer is gone.
  void send_line(std::string_view line);
  /// One line without its terminator, or nullopt once `timeout` elapses.
  /// Throws TransportError on EOF or socket error.
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);

  std::uint64_t next_seq() noexcept { return ++seq_; }
  std::chrono::milliseconds reply_timeout() const noexcept { return reply_timeout_; }
  const std::string& socket_path() const noexcept { return path_; }

  void note_timed_out(std::uint64_t seq) { timed_out_.insert(seq); }
  bool forget_timed_out(std::uint64_t seq) { return timed_out_.erase(seq) > 0; }

 private:
  std::string path_;
  std::chrono::milliseconds reply_timeout_;
  int fd_ = -1;
  std::uint64_t seq_ = 0;
  std::string buffer_;
  std::set<std::uint64_t> timed_out_;
};

/// Sends one command and waits for its acknowledgement.
///
/// A reply timeout yields an unacked record with `error` set. A broken
/// connection is re-established and the command retried once with a fresh
/// seq; a second failure throws TransportError. A malformed or mismatched
/// reply throws ProtocolError. Late replies to earlier timed-out commands are
/// skipped.
CommandRecord dispatch(PlayerAction action, PlayerConnection& connection);

}  // namespace handmenu
