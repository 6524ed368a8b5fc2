#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

namespace handmenu::testing {

struct WsMessage {
  bool binary = false;
  std::string data;
};

/// Blocking WebSocket client for exercising the state server.
class WsClient {
 public:
  WsClient(const std::string& host, unsigned short port);
  ~WsClient();

  /// nullopt on timeout.
  std::optional<WsMessage> read(std::chrono::milliseconds timeout = std::chrono::seconds(5));
  void send_text(const std::string& text);
  void close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace handmenu::testing
