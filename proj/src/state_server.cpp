#include "handmenu/state_server.hpp"

#include <atomic>
#include <deque>
#include <set>
#include <thread>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "handmenu/error.hpp"
#include "handmenu/log.hpp"

namespace handmenu {

namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using nlohmann::json;

constexpr std::array<char, 4> kMagic = {'F', 'R', 'M', 'E'};
constexpr std::size_t kHeaderBytes = 16;

void put_u32_be(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>(v & 0xFF));
}

std::uint32_t get_u32_be(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

struct FramePair {
  std::shared_ptr<const std::string> text;
  std::shared_ptr<const std::string> binary;
};

}  // namespace

std::string encode_frame_message(const Frame& frame, std::uint64_t frame_seq) {
  std::string out;
  out.reserve(kHeaderBytes + frame.pixels().size());
  out.append(kMagic.data(), kMagic.size());
  put_u32_be(out, static_cast<std::uint32_t>(frame.width()));
  put_u32_be(out, static_cast<std::uint32_t>(frame.height()));
  put_u32_be(out, static_cast<std::uint32_t>(frame_seq));
  out.append(reinterpret_cast<const char*>(frame.pixels().data()), frame.pixels().size());
  return out;
}

FrameMessage decode_frame_message(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw FormatError("frame message: missing FRME magic");
  }
  FrameMessage m;
  m.width = get_u32_be(bytes.data() + 4);
  m.height = get_u32_be(bytes.data() + 8);
  m.frame_seq = get_u32_be(bytes.data() + 12);
  const std::uint64_t expected = kHeaderBytes + std::uint64_t{m.width} * m.height * 3;
  if (bytes.size() != expected) throw FormatError("frame message: length does not match dimensions");
  m.rgb = bytes.subspan(kHeaderBytes);
  return m;
}

std::string handle_control_message(ConfigChannel& channel, std::string_view text) {
  auto reject = [](const std::string& why) { return json{{"ok", false}, {"error", why}}.dump(); };
  const json msg = json::parse(text, nullptr, false);
  if (msg.is_discarded()) return reject("message is not valid JSON");
  if (!msg.is_object() || msg.size() != 1 || !msg.contains("set")) {
    return reject("expected {\"set\": {...}}");
  }
  if (auto error = channel.request_update(msg["set"])) return reject(*error);
  return json{{"ok", true}}.dump();
}

class Session;

struct detail::StateServerCore {
  StateServerCore(const std::string& listen_address, std::shared_ptr<ConfigChannel> ch)
      : ioc(1), acceptor(ioc), channel(std::move(ch)) {
    const ListenAddress addr = parse_listen_address(listen_address);
    const tcp::endpoint endpoint(asio::ip::make_address(addr.host), addr.port);
    acceptor.open(endpoint.protocol());
    acceptor.set_option(asio::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen(asio::socket_base::max_listen_connections);
    bound_port = acceptor.local_endpoint().port();
  }

  void accept();
  void publish(FramePair pair);
  void shutdown();

  asio::io_context ioc;
  tcp::acceptor acceptor;
  std::shared_ptr<ConfigChannel> channel;
  std::set<std::shared_ptr<Session>> sessions;  // io thread only
  std::optional<FramePair> latest;              // io thread only
  std::atomic<std::size_t> clients{0};
  std::atomic<std::uint64_t> dropped{0};
  unsigned short bound_port = 0;
  std::thread thread;
  std::atomic<bool> stopped{false};
};

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket socket, detail::StateServerCore& server) : ws_(std::move(socket)), server_(server) {}

  void start() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(beast::bind_front_handler(&Session::on_accept, shared_from_this()));
  }

  void push_frame(const FramePair& pair) {
    if (closed_) return;
    if (frames_.size() >= StateServer::kClientQueueFrames) {
      frames_.pop_front();
      ++server_.dropped;
    }
    frames_.push_back(pair);
    write_next();
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    beast::error_code ec;
    beast::get_lowest_layer(ws_).socket().shutdown(tcp::socket::shutdown_both, ec);
    beast::get_lowest_layer(ws_).socket().close(ec);
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) {
      log::debug("websocket handshake failed: " + ec.message());
      return;
    }
    accepted_ = true;
    server_.sessions.insert(shared_from_this());
    ++server_.clients;
    if (server_.latest) push_frame(*server_.latest);
    read();
  }

  void read() { ws_.async_read(buffer_, beast::bind_front_handler(&Session::on_read, shared_from_this())); }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      drop();
      return;
    }
    if (ws_.got_text()) {
      replies_.push_back(handle_control_message(*server_.channel, beast::buffers_to_string(buffer_.data())));
      write_next();
    }
    buffer_.consume(buffer_.size());
    read();
  }

  // A frame's text and binary parts always go out back to back.
  void write_next() {
    if (writing_ || closed_ || !accepted_) return;
    bool binary = false;
    if (pending_binary_) {
      current_ = std::exchange(pending_binary_, nullptr);
      binary = true;
    } else if (!replies_.empty()) {
      current_ = std::make_shared<const std::string>(std::move(replies_.front()));
      replies_.pop_front();
    } else if (!frames_.empty()) {
      current_ = frames_.front().text;
      pending_binary_ = frames_.front().binary;
      frames_.pop_front();
    } else {
      return;
    }
    writing_ = true;
    ws_.binary(binary);
    ws_.async_write(asio::buffer(*current_), beast::bind_front_handler(&Session::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    writing_ = false;
    current_.reset();
    if (ec) {
      drop();
      return;
    }
    write_next();
  }

  void drop() {
    if (accepted_ && server_.sessions.erase(shared_from_this()) > 0) --server_.clients;
    close();
  }

  websocket::stream<beast::tcp_stream> ws_;
  detail::StateServerCore& server_;
  beast::flat_buffer buffer_;
  std::deque<FramePair> frames_;
  std::deque<std::string> replies_;
  std::shared_ptr<const std::string> current_;
  std::shared_ptr<const std::string> pending_binary_;
  bool writing_ = false;
  bool accepted_ = false;
  bool closed_ = false;
};

void detail::StateServerCore::accept() {
  acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec) {
      if (ec != asio::error::operation_aborted) log::warn("accept failed: " + ec.message());
      if (!acceptor.is_open()) return;
    } else {
      std::make_shared<Session>(std::move(socket), *this)->start();
    }
    accept();
  });
}

void detail::StateServerCore::publish(FramePair pair) {
  asio::post(ioc, [this, pair = std::move(pair)] {
    latest = pair;
    for (const auto& s : sessions) s->push_frame(pair);
  });
}

void detail::StateServerCore::shutdown() {
  if (stopped.exchange(true)) return;
  asio::post(ioc, [this] {
    beast::error_code ec;
    acceptor.close(ec);
    for (const auto& s : sessions) s->close();
    sessions.clear();
    clients = 0;
    ioc.stop();
  });
  if (thread.joinable()) thread.join();
}

StateServer::StateServer(const std::string& listen_address, std::shared_ptr<ConfigChannel> channel)
    : impl_(std::make_unique<detail::StateServerCore>(listen_address, std::move(channel))) {
  impl_->accept();
  impl_->thread = std::thread([impl = impl_.get()] {
    for (;;) {
      try {
        impl->ioc.run();
        break;
      } catch (const std::exception& e) {
        log::error(std::string("state server: ") + e.what());
      }
    }
  });
  log::info("state server listening on port " + std::to_string(impl_->bound_port));
}

StateServer::~StateServer() { stop(); }

unsigned short StateServer::port() const noexcept { return impl_->bound_port; }
std::size_t StateServer::client_count() const noexcept { return impl_->clients.load(); }
std::uint64_t StateServer::frames_dropped() const noexcept { return impl_->dropped.load(); }

void StateServer::consume(const StateSnapshot& snapshot, const Frame& overlay) {
  if (impl_->stopped.load()) return;
  impl_->publish(FramePair{std::make_shared<const std::string>(snapshot.to_json().dump()),
                           std::make_shared<const std::string>(encode_frame_message(overlay, snapshot.frame_seq))});
}

void StateServer::stop() {
  impl_->shutdown();
}

std::unique_ptr<StateServer> serve_state(const std::string& listen_address, std::shared_ptr<ConfigChannel> channel) {
  return std::make_unique<StateServer>(listen_address, std::move(channel));
}

}  // namespace handmenu
