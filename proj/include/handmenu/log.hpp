#pragma once

#include <string_view>

// Thin facade over the process logger: level-prefixed lines on stderr.
namespace handmenu::log {

enum class Level { Debug, Info, Warn, Error, Off };

void set_level(Level level);
void debug(std::string_view msg);
void info(std::string_view msg);
void warn(std::string_view msg);
void error(std::string_view msg);

}  // namespace handmenu::log
