#include "support/ws_client.hpp"

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

namespace handmenu::testing {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

struct WsClient::Impl {
  asio::io_context ioc;
  websocket::stream<beast::tcp_stream> ws{ioc};
};

WsClient::WsClient(const std::string& host, unsigned short port) : impl_(std::make_unique<Impl>()) {
  tcp::resolver resolver(impl_->ioc);
  const auto results = resolver.resolve(host, std::to_string(port));
  beast::get_lowest_layer(impl_->ws).connect(results);
  impl_->ws.handshake(host, "/");
}

WsClient::~WsClient() { close(); }

std::optional<WsMessage> WsClient::read(std::chrono::milliseconds timeout) {
  beast::flat_buffer buffer;
  beast::error_code result = asio::error::would_block;
  impl_->ws.async_read(buffer, [&](beast::error_code ec, std::size_t) { result = ec; });
  impl_->ioc.restart();
  impl_->ioc.run_for(timeout);
  if (result == asio::error::would_block) {
    // Abandon the read; the stream is unusable afterwards.
    beast::get_lowest_layer(impl_->ws).cancel();
    impl_->ioc.restart();
    impl_->ioc.run();
    return std::nullopt;
  }
  if (result) throw beast::system_error(result);
  return WsMessage{impl_->ws.got_binary(), beast::buffers_to_string(buffer.data())};
}

void WsClient::send_text(const std::string& text) {
  impl_->ws.text(true);
  impl_->ws.write(asio::buffer(text));
}

void WsClient::close() {
  beast::error_code ec;
  beast::get_lowest_layer(impl_->ws).socket().shutdown(tcp::socket::shutdown_both, ec);
  beast::get_lowest_layer(impl_->ws).socket().close(ec);
}

}  // namespace handmenu::testing
