#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace handmenu {

/// Media-player commands reachable from the menu.
enum class PlayerAction { PlayPause, Stop, Next, Prev, VolUp, VolDown, Mute };

inline constexpr std::array<PlayerAction, 7> kAllPlayerActions = {
    PlayerAction::PlayPause, PlayerAction::Stop,    PlayerAction::Next, PlayerAction::Prev,
    PlayerAction::VolUp,     PlayerAction::VolDown, PlayerAction::Mute,
};

/// Wire name, e.g. "play_pause".
std::string_view action_name(PlayerAction action) noexcept;
std::optional<PlayerAction> action_from_name(std::string_view name) noexcept;

}  // namespace handmenu
