#include "handmenu/control.hpp"

#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include <json.hpp>

#include "handmenu/error.hpp"

namespace handmenu {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string_view strip_newline(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

json parse_object(std::string_view line, const char* what) {
  json j = json::parse(strip_newline(line), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ProtocolError(std::string(what) + " is not a JSON object", std::string(line));
  }
  return j;
}

std::uint64_t seq_field(const json& j, std::string_view line, const char* what) {
  const auto it = j.find("seq");
  if (it == j.end() || !it->is_number_unsigned()) {
    throw ProtocolError(std::string(what) + " lacks an unsigned integer seq", std::string(line));
  }
  return it->get<std::uint64_t>();
}

std::int64_t wall_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::string encode_command(PlayerAction action, std::uint64_t seq) {
  std::string out = "{\"action\":\"";
  out += action_name(action);
  out += "\",\"seq\":";
  out += std::to_string(seq);
  out += "}\n";
  return out;
}

DecodedCommand decode_command(std::string_view line) {
  const json j = parse_object(line, "command");
  if (j.size() != 2) throw ProtocolError("command must hold exactly action and seq", std::string(line));
  const auto it = j.find("action");
  if (it == j.end() || !it->is_string()) throw ProtocolError("command lacks a string action", std::string(line));
  const auto action = action_from_name(it->get<std::string>());
  if (!action) throw ProtocolError("unknown action '" + it->get<std::string>() + "'", std::string(line));
  return {*action, seq_field(j, line, "command")};
}

std::string encode_reply(std::uint64_t seq, bool ok) {
  return "{\"seq\":" + std::to_string(seq) + ",\"ok\":" + (ok ? "true" : "false") + "}\n";
}

PlayerReply decode_reply(std::string_view line) {
  const json j = parse_object(line, "reply");
  const auto ok = j.find("ok");
  if (ok == j.end() || !ok->is_boolean()) throw ProtocolError("reply lacks a boolean ok", std::string(line));
  return {seq_field(j, line, "reply"), ok->get<bool>()};
}

PlayerConnection::PlayerConnection(std::string socket_path, std::chrono::milliseconds reply_timeout)
    : path_(std::move(socket_path)), reply_timeout_(reply_timeout) {}

PlayerConnection::~PlayerConnection() { close(); }

void PlayerConnection::connect() {
  close();
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  if (path_.empty() || path_.size() >= sizeof(addr.sun_path)) {
    throw TransportError("player socket path '" + path_ + "' is empty or too long");
  }
  std::memcpy(addr.sun_path, path_.c_str(), path_.size() + 1);
  const int fd = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd < 0) throw TransportError(std::string("socket: ") + std::strerror(errno));
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    const int err = errno;
    ::close(fd);
    throw TransportError("connect " + path_ + ": " + std::strerror(err));
  }
  fd_ = fd;
  buffer_.clear();
}

void PlayerConnection::close() noexcept {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
  buffer_.clear();
}

void PlayerConnection::send_line(std::string_view line) {
  if (fd_ < 0) throw TransportError("player connection is closed");
  while (!line.empty()) {
    const ssize_t n = ::send(fd_, line.data(), line.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("send: ") + std::strerror(errno));
    }
    line.remove_prefix(static_cast<std::size_t>(n));
  }
}

std::optional<std::string> PlayerConnection::read_line(std::chrono::milliseconds timeout) {
  if (fd_ < 0) throw TransportError("player connection is closed");
  const auto deadline = Clock::now() + timeout;
  for (;;) {
    if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) return std::nullopt;
    pollfd p{fd_, POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("poll: ") + std::strerror(errno));
    }
    if (ready == 0) return std::nullopt;
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n == 0) throw TransportError("player closed the connection");
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw TransportError(std::string("recv: ") + std::strerror(errno));
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

CommandRecord dispatch(PlayerAction action, PlayerConnection& connection) {
  for (int attempt = 0;; ++attempt) {
    try {
      if (!connection.connected()) connection.connect();
      CommandRecord record;
      record.action = action;
      record.seq = connection.next_seq();
      record.sent_at_ms = wall_ms();
      connection.send_line(encode_command(action, record.seq));

      const auto deadline = Clock::now() + connection.reply_timeout();
      for (;;) {
        const auto left =
            std::max(std::chrono::milliseconds(0),
                     std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()));
        const auto line = connection.read_line(left);
        if (!line) {
          connection.note_timed_out(record.seq);
          record.error = "no reply within " + std::to_string(connection.reply_timeout().count()) + " ms";
          return record;
        }
        const PlayerReply reply = decode_reply(*line);
        if (reply.seq < record.seq && connection.forget_timed_out(reply.seq)) continue;
        if (reply.seq != record.seq) {
          throw ProtocolError("reply seq " + std::to_string(reply.seq) + " does not match command seq " +
                                  std::to_string(record.seq),
                              *line);
        }
        record.acked = reply.ok;
        if (!reply.ok) record.error = "player rejected the command";
        return record;
      }
    } catch (const TransportError&) {
      connection.close();
      if (attempt >= 1) throw;
    }
  }
}

}  // namespace handmenu
