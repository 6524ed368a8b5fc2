#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "handmenu/config.hpp"
#include "handmenu/frame.hpp"

namespace handmenu {

struct StageStats {
  std::string stage;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;
};

struct BenchReport {
  std::size_t frames = 0;
  FrameSize size;
  std::vector<StageStats> stages;  // blur, hsv_threshold, blobs, gesture, total, render

  const StageStats& stage(const std::string& name) const;
};

/// Nearest-rank percentile (q in [0, 100]) of `samples`; 0 when empty.
double percentile(std::vector<double> samples, double q);

/// Times the pipeline on `frames` synthetic frames of a disk sweeping across
/// the menu, headless (no player, no broadcast).
BenchReport run_bench(std::size_t frames, FrameSize size, const PipelineConfig& config = {});

/// Fixed-width table with one row per stage and p50/p95/max columns in ms.
std::string format_bench_table(const BenchReport& report);

}  // namespace handmenu
