#include "handmenu/menu.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "handmenu/error.hpp"

namespace handmenu {

namespace {

bool overlaps(const NormRect& a, const NormRect& b) noexcept {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

void check_rect(const MenuRegion& r) {
  const auto& q = r.rect;
  const bool finite = std::isfinite(q.x0) && std::isfinite(q.y0) && std::isfinite(q.x1) && std::isfinite(q.y1);
  if (!finite || q.x0 < 0.0 || q.y0 < 0.0 || q.x1 > 1.0 || q.y1 > 1.0 || q.x0 >= q.x1 || q.y0 >= q.y1) {
    throw ParameterError("menu region '" + r.id + "' rect must satisfy 0 <= x0 < x1 <= 1 and 0 <= y0 < y1 <= 1");
  }
}

class Canvas {
 public:
  explicit Canvas(Frame& f) : f_(f) {}

  void put(long x, long y, Rgb c) {
    if (x >= 0 && y >= 0 && x < f_.width() && y < f_.height()) f_.set(static_cast<int>(x), static_cast<int>(y), c);
  }

  void hline(long x0, long x1, long y, Rgb c) {
    for (long x = x0; x <= x1; ++x) put(x, y, c);
  }
  void vline(long x, long y0, long y1, Rgb c) {
    for (long y = y0; y <= y1; ++y) put(x, y, c);
  }

  void outline(const BBox& b, Rgb c) {
    if (b.x_max < b.x_min || b.y_max < b.y_min) return;
    hline(b.x_min, b.x_max, b.y_min, c);
    hline(b.x_min, b.x_max, b.y_max, c);
    vline(b.x_min, b.y_min, b.y_max, c);
    vline(b.x_max, b.y_min, b.y_max, c);
  }

 private:
  Frame& f_;
};

constexpr int kCaptionTickLength = 3;
constexpr int kProgressBarHeight = 3;
constexpr int kCrosshairArm = 6;

}  // namespace

MenuModel::MenuModel(std::vector<MenuRegion> regions) : regions_(std::move(regions)) {
  std::set<std::string, std::less<>> ids;
  for (const auto& r : regions_) {
    if (r.id.empty()) throw ParameterError("menu region id must not be empty");
    if (!ids.insert(r.id).second) throw ParameterError("duplicate menu region id '" + r.id + "'");
    check_rect(r);
  }
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    for (std::size_t j = i + 1; j < regions_.size(); ++j) {
      if (overlaps(regions_[i].rect, regions_[j].rect)) {
        throw ParameterError("menu regions '" + regions_[i].id + "' and '" + regions_[j].id + "' overlap");
      }
    }
  }
}

const MenuRegion* MenuModel::find(std::string_view id) const noexcept {
  for (const auto& r : regions_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

MenuModel default_menu() {
  struct Item {
    const char* id;
    PlayerAction action;
    const char* caption;
  };
  constexpr Item items[] = {
      {"play_pause", PlayerAction::PlayPause, "Play/Pause"},
      {"stop", PlayerAction::Stop, "Stop"},
      {"prev", PlayerAction::Prev, "Previous"},
      {"next", PlayerAction::Next, "Next"},
      {"vol_down", PlayerAction::VolDown, "Volume -"},
      {"vol_up", PlayerAction::VolUp, "Volume +"},
      {"mute", PlayerAction::Mute, "Mute"},
  };
  // 7 buttons of height 0.12 separated by 0.02 gaps fill [0.02, 0.98].
  constexpr double kTop = 0.02;
  constexpr double kHeight = 0.12;
  constexpr double kPitch = 0.14;
  std::vector<MenuRegion> regions;
  for (int i = 0; i < 7; ++i) {
    const double y0 = kTop + kPitch * i;
    regions.push_back({items[i].id, items[i].action, NormRect{0.02, y0, 0.14, y0 + kHeight}, items[i].caption});
  }
  return MenuModel(std::move(regions));
}

std::optional<std::string> hit_test(const MenuModel& menu, PointD point, const std::optional<std::string>& hovered,
                                    double inflate) {
  if (hovered) {
    if (const auto* r = menu.find(*hovered); r != nullptr && r->rect.inflated(inflate).contains(point.x, point.y)) {
      return r->id;
    }
  }
  for (const auto& r : menu.regions()) {
    if (r.rect.contains(point.x, point.y)) return r.id;
  }
  return std::nullopt;
}

void OverlaySpec::validate() const {
  if (!(dwell_progress >= 0.0 && dwell_progress <= 1.0)) {
    throw ParameterError("dwell_progress must lie in [0, 1]");
  }
  if (hovered && menu.find(*hovered) == nullptr) {
    throw ParameterError("hovered region '" + *hovered + "' is not in the menu");
  }
}

BBox to_pixels(const NormRect& rect, FrameSize size) noexcept {
  auto clamp_to = [](long v, int hi) { return static_cast<int>(std::clamp<long>(v, -1, hi)); };
  return BBox{clamp_to(std::lround(rect.x0 * size.width), size.width),
              clamp_to(std::lround(rect.y0 * size.height), size.height),
              clamp_to(std::lround(rect.x1 * size.width) - 1, size.width - 1),
              clamp_to(std::lround(rect.y1 * size.height) - 1, size.height - 1)};
}

Frame render_overlay(const Frame& frame, const OverlaySpec& spec) {
  spec.validate();
  Frame out = frame;
  Canvas canvas(out);

  for (const auto& b : spec.blobs) canvas.outline(b, palette::kBlobBox);

  for (const auto& region : spec.menu.regions()) {
    const BBox box = to_pixels(region.rect, frame.size());
    if (box.x_max < box.x_min || box.y_max < box.y_min) continue;
    const bool hovered = spec.hovered && *spec.hovered == region.id;
    canvas.outline(box, hovered ? palette::kHover : palette::kMenuOutline);
    // Caption anchor: a short tick on the top edge where the label starts.
    const int tick_end = std::min(box.x_min + kCaptionTickLength, box.x_max - 1);
    canvas.hline(box.x_min + 1, tick_end, box.y_min, palette::kCaptionTick);

    if (hovered) {
      const int inner_w = box.x_max - box.x_min - 1;
      const int fill = static_cast<int>(std::lround(spec.dwell_progress * inner_w));
      const int bar_top = std::max(box.y_min + 1, box.y_max - kProgressBarHeight);
      for (int y = bar_top; y <= box.y_max - 1; ++y) canvas.hline(box.x_min + 1, box.x_min + fill, y, palette::kHover);
    }
  }

  if (spec.pointer && std::isfinite(spec.pointer->x) && std::isfinite(spec.pointer->y)) {
    // Far-off pointers cannot touch the frame; clamp before converting to integers.
    const long px = std::lround(std::clamp(spec.pointer->x, -100.0 - kCrosshairArm, frame.width() + 100.0));
    const long py = std::lround(std::clamp(spec.pointer->y, -100.0 - kCrosshairArm, frame.height() + 100.0));
    canvas.hline(px - kCrosshairArm, px + kCrosshairArm, py, palette::kCrosshair);
    canvas.vline(px, py - kCrosshairArm, py + kCrosshairArm, palette::kCrosshair);
  }
  return out;
}

}  // namespace handmenu
