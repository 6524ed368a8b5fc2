#include "handmenu/action.hpp"

namespace handmenu {

namespace {

struct Entry {
  PlayerAction action;
  std::string_view name;
};

constexpr std::array<Entry, 7> kTable = {{
    {PlayerAction::PlayPause, "play_pause"},
    {PlayerAction::Stop, "stop"},
    {PlayerAction::Next, "next"},
    {PlayerAction::Prev, "prev"},
    {PlayerAction::VolUp, "vol_up"},
    {PlayerAction::VolDown, "vol_down"},
    {PlayerAction::Mute, "mute"},
}};

}  // namespace

std::string_view action_name(PlayerAction action) noexcept {
  for (const auto& e : kTable) {
    if (e.action == action) return e.name;
  }
  return "unknown";
}

std::optional<PlayerAction> action_from_name(std::string_view name) noexcept {
  for (const auto& e : kTable) {
    if (e.name == name) return e.action;
  }
  return std::nullopt;
}

}  // namespace handmenu
