#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vseg/detectors.hpp"
#include "vseg/frame_io.hpp"
#include "vseg/keyframes.hpp"
#include "vseg/policy.hpp"

namespace vseg {

struct RunOptions {
  FrameSpec spec;
  PolicyTable policy = default_table();
  // nullopt = auto (policy map decides); otherwise the strategy is forced.
  std::optional<Strategy> strategy;
  std::optional<double> threshold;
  std::optional<double> minlen_sec;
  std::optional<double> interval_sec;
  KeyframeWeights weights;
  bool write_thumbnails = true;
};

struct Diagnostics {
  std::int64_t frames_read = 0;
  std::int64_t pairs_scored = 0;
  bool fallback_triggered = false;
  double keyframe_coverage = 0.0;  // keyframes present / scene count
};

struct StageTiming {
  double probe_sec = 0.0;
  double score_sec = 0.0;
  double detect_sec = 0.0;
  double keyframe_sec = 0.0;
  double total_sec = 0.0;
};

struct SegmentationResult {
  VideoMeta video;
  FrameSpec spec;
  PolicySpec policy;
  std::string used_strategy;  // equals the strategy name, or the fallback tag
  std::vector<Scene> scenes;
  // Indexed by scene; nullopt where keyframe extraction failed.
  std::vector<std::optional<KeyframeRecord>> keyframes;
  Diagnostics diagnostics;
  StageTiming timing;
};

/// End-to-end single-video run: probe, resolve policy, stream + score,
/// detect, extract keyframes. Deterministic for identical inputs and
/// options. Throws UnreadableSource on fatal input errors; per-scene
/// keyframe failures are recorded, not thrown.
SegmentationResult run(const std::filesystem::path& source, const RunOptions& options);

/// Writes scenes.json plus one PPM thumbnail per successful keyframe.
/// Returns the manifest path. Output is stable-ordered and byte-identical
/// across runs for identical results.
std::filesystem::path write_metadata(const SegmentationResult& result,
                                     const std::filesystem::path& out_dir,
                                     bool write_thumbnails = true);

struct BatchEntry {
  std::filesystem::path source;
  std::variant<SegmentationResult, std::string> outcome;  // result or error text

  bool ok() const { return std::holds_alternative<SegmentationResult>(outcome); }
  const SegmentationResult& result() const { return std::get<SegmentationResult>(outcome); }
  const std::string& error() const { return std::get<std::string>(outcome); }
};

/// Processes videos concurrently with at most `parallelism` workers. One
/// video's failure never aborts the others.
std::vector<BatchEntry> run_batch(const std::vector<std::filesystem::path>& sources,
                                  int parallelism, const RunOptions& options);

}  // namespace vseg
