#include "handmenu/mock_player.hpp"

#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "handmenu/control.hpp"
#include "handmenu/error.hpp"

namespace handmenu {

namespace {

constexpr int kPollMs = 20;

void send_all(int fd, const std::string& data) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return;
    }
    off += static_cast<std::size_t>(n);
  }
}

}  // namespace

MockPlayer::MockPlayer(std::filesystem::path path, MockPlayerOptions options)
    : path_(std::move(path)), options_(options), drop_replies_(options.drop_replies) {
  std::error_code ec;
  if (std::filesystem::exists(path_, ec)) throw TransportError(path_.string() + ": path already in use");
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  const std::string p = path_.string();
  if (p.size() >= sizeof(addr.sun_path)) throw TransportError(p + ": socket path too long");
  std::memcpy(addr.sun_path, p.c_str(), p.size() + 1);

  listen_fd_ = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (listen_fd_ < 0) throw TransportError(std::string("socket: ") + std::strerror(errno));
  if (::bind(listen_fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 4) != 0) {
    const int err = errno;
    ::close(listen_fd_);
    throw TransportError(p + ": " + std::strerror(err));
  }
  started_ = std::chrono::steady_clock::now();
  worker_ = std::thread([this] { serve(); });
}

MockPlayer::~MockPlayer() { stop(); }

void MockPlayer::stop() {
  if (stopping_.exchange(true)) return;
  if (worker_.joinable()) worker_.join();
  ::close(listen_fd_);
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

std::vector<PlayerAction> MockPlayer::actions() const {
  std::lock_guard lock(mutex_);
  std::vector<PlayerAction> out;
  for (const auto& e : entries_) {
    if (e.action) out.push_back(*e.action);
  }
  return out;
}

std::vector<MockPlayerEntry> MockPlayer::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

bool MockPlayer::wait_for_entries(std::size_t count, std::chrono::milliseconds timeout) const {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    {
      std::lock_guard lock(mutex_);
      if (entries_.size() >= count) return true;
    }
    if (std::chrono::steady_clock::now() >= deadline) return false;
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
}

void MockPlayer::handle_line(int client_fd, const std::string& line) {
  MockPlayerEntry entry;
  entry.raw = line;
  entry.received_at_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started_).count();
  bool ok = true;
  try {
    const DecodedCommand cmd = decode_command(line);
    entry.action = cmd.action;
    entry.seq = cmd.seq;
  } catch (const ProtocolError&) {
    entry.violation = true;
    ok = false;
  }
  {
    std::lock_guard lock(mutex_);
    entries_.push_back(entry);
  }
  if (!drop_replies_.load()) send_all(client_fd, encode_reply(entry.seq, ok));
}

void MockPlayer::serve() {
  bool fault_used = false;
  while (!stopping_.load()) {
    pollfd lp{listen_fd_, POLLIN, 0};
    if (::poll(&lp, 1, kPollMs) <= 0) continue;
    const int client = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (client < 0) continue;
    ++accepted_;

    std::string buffer;
    int handled = 0;
    bool open = true;
    while (open && !stopping_.load()) {
      pollfd cp{client, POLLIN, 0};
      const int ready = ::poll(&cp, 1, kPollMs);
      if (ready <= 0) continue;
      char chunk[4096];
      const ssize_t n = ::recv(client, chunk, sizeof(chunk), 0);
      if (n <= 0) break;
      buffer.append(chunk, static_cast<std::size_t>(n));
      for (auto nl = buffer.find('\n'); nl != std::string::npos; nl = buffer.find('\n')) {
        const std::string line = buffer.substr(0, nl);
        buffer.erase(0, nl + 1);
        handle_line(client, line);
        ++handled;
        if (!fault_used && options_.close_after && handled >= *options_.close_after) {
          fault_used = true;
          open = false;
          break;
        }
      }
    }
    ::close(client);
  }
}

std::unique_ptr<MockPlayer> mock_player(const std::filesystem::path& path, MockPlayerOptions options) {
  return std::make_unique<MockPlayer>(path, options);
}

}  // namespace handmenu
