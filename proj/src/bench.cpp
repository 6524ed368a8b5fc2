#include "handmenu/bench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "handmenu/framesource.hpp"
#include "handmenu/pipeline.hpp"

namespace handmenu {

const StageStats& BenchReport::stage(const std::string& name) const {
  for (const auto& s : stages) {
    if (s.stage == name) return s;
  }
  throw std::out_of_range("no bench stage '" + name + "'");
}

double percentile(std::vector<double> samples, double q) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double rank = std::ceil(q / 100.0 * static_cast<double>(samples.size()));
  const auto idx = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(samples.size()))) - 1;
  return samples[idx];
}

BenchReport run_bench(std::size_t frames, FrameSize size, const PipelineConfig& config) {
  SyntheticScript script;
  script.width = size.width;
  script.height = size.height;
  script.fps = 30.0;
  script.duration_ms = static_cast<std::int64_t>(std::ceil(static_cast<double>(frames) * 1000.0 / 30.0));
  script.background = {40, 40, 40};
  const double radius = std::max(2.0, 25.0 * size.height / 480.0);
  script.keyframes = {
      {0, {0.5, 0.5}, radius, {0, 255, 0}},
      {2000, {0.08, 0.08}, radius, {0, 255, 0}},
      {4000, {0.08, 0.9}, radius, {0, 255, 0}},
      {6000, {0.9, 0.9}, radius, {0, 255, 0}},
      {10000, {0.5, 0.5}, radius, {0, 255, 0}},
  };
  auto source = synthetic_source(script);

  PipelineConfig cfg = config;
  cfg.player_socket_path.clear();
  Pipeline pipeline(cfg);

  std::vector<double> blur, hsv, blobs, gesture, total, render;
  BenchReport report;
  report.size = size;
  while (report.frames < frames) {
    auto frame = source->next_frame();
    if (!frame) break;
    const auto out = pipeline.process(*frame);
    const auto& l = out.snapshot.latency_us;
    blur.push_back(l.blur / 1000.0);
    hsv.push_back(l.hsv_threshold / 1000.0);
    blobs.push_back(l.blobs / 1000.0);
    gesture.push_back(l.gesture / 1000.0);
    total.push_back(l.total / 1000.0);
    render.push_back(l.render / 1000.0);
    ++report.frames;
  }

  auto stats = [](std::string name, const std::vector<double>& v) {
    return StageStats{std::move(name), percentile(v, 50), percentile(v, 95),
                      v.empty() ? 0.0 : *std::max_element(v.begin(), v.end())};
  };
  report.stages = {stats("blur", blur),       stats("hsv_threshold", hsv), stats("blobs", blobs),
                   stats("gesture", gesture), stats("total", total),       stats("render", render)};
  return report;
}

std::string format_bench_table(const BenchReport& report) {
  std::string out = fmt::format("frames: {}  size: {}x{}\n", report.frames, report.size.width, report.size.height);
  out += fmt::format("{:<14} {:>10} {:>10} {:>10}\n", "stage", "p50_ms", "p95_ms", "max_ms");
  for (const auto& s : report.stages) {
    out += fmt::format("{:<14} {:>10.3f} {:>10.3f} {:>10.3f}\n", s.stage, s.p50_ms, s.p95_ms, s.max_ms);
  }
  return out;
}

}  // namespace handmenu
