#include "handmenu/log.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace handmenu::log {

namespace {

spdlog::logger& logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto l = spdlog::stderr_logger_mt("handmenu");
    l->set_pattern("[%l] %v");
    l->set_level(spdlog::level::info);
    return l;
  }();
  return *instance;
}

}  // namespace

void set_level(Level level) {
  switch (level) {
    case Level::Debug:
      logger().set_level(spdlog::level::debug);
      break;
    case Level::Info:
      logger().set_level(spdlog::level::info);
      break;
    case Level::Warn:
      logger().set_level(spdlog::level::warn);
      break;
    case Level::Error:
      logger().set_level(spdlog::level::err);
      break;
    case Level::Off:
      logger().set_level(spdlog::level::off);
      break;
  }
}

void debug(std::string_view msg) { logger().debug("{}", msg); }
void info(std::string_view msg) { logger().info("{}", msg); }
void warn(std::string_view msg) { logger().warn("{}", msg); }
void error(std::string_view msg) { logger().error("{}", msg); }

}  // namespace handmenu::log
