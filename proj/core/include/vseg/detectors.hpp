#pragma once

#include <string>
#include <vector>

#include "vseg/frame_io.hpp"
#include "vseg/metrics.hpp"

namespace vseg {

/// Half-open temporal interval in sampled-frame indices.
struct Scene {
  int index = 0;
  std::int64_t start_frame = 0;  // inclusive
  std::int64_t end_frame = 0;    // exclusive
  double start_sec = 0.0;
  double end_sec = 0.0;

  std::int64_t frame_span() const { return end_frame - start_frame; }
  double duration_sec() const { return end_sec - start_sec; }

  bool operator==(const Scene&) const = default;
};

struct DetectorParams {
  double threshold = 15.0;
  double minlen_sec = 15.0;
  int smoothing_window = 3;     // odd sample count
  int adaptive_window = 2;      // half-width in samples
  double interval_sec = 30.0;   // regular split only
  int fallback_min_scenes = 3;  // reliability count
  double content_floor = 3.0;   // absolute raw-score floor for the adaptive detector
};

/// Boundary index b cuts between sampled frames b and b+1: a new scene
/// starts at frame b+1.
///
/// Candidates are indices where score > threshold and score is a strict
/// local maximum over [t-1, t+1] (plateaus resolve to the leftmost index).
/// Candidates are accepted greedily left-to-right: the first candidate is
/// always kept, later ones need t - t_prev >= minlen_frames.
std::vector<std::int64_t> detect_boundaries(const std::vector<double>& scores,
                                            double threshold,
                                            std::int64_t minlen_frames);

std::int64_t minlen_frames_for(double minlen_sec, double sampling_fps);

/// Converts cut boundaries into scenes tiling [0, frame_count). The last
/// scene's end_sec is clamped to duration_sec when one is given (<= 0 means
/// unknown).
std::vector<Scene> scenes_from_boundaries(const std::vector<std::int64_t>& boundaries,
                                          std::int64_t frame_count,
                                          double sampling_fps,
                                          double duration_sec = 0.0);

std::vector<Scene> detect_content(const ScoreSeries& series, const DetectorParams& params,
                                  double duration_sec = 0.0);

std::vector<Scene> detect_adaptive(const ScoreSeries& series, const DetectorParams& params,
                                   double duration_sec = 0.0);

struct FallbackResult {
  std::vector<Scene> scenes;
  std::string used_strategy;  // "fallback:adaptive" or "fallback:content"
};

FallbackResult detect_fallback(const ScoreSeries& series,
                               const DetectorParams& adaptive_params,
                               const DetectorParams& content_params,
                               double duration_sec = 0.0);

/// Fixed-interval segmentation. A trailing remainder shorter than 1 s merges
/// into the previous scene; a video shorter than the interval is one scene.
std::vector<Scene> detect_regular(const VideoMeta& meta, const FrameSpec& spec,
                                  double interval_sec);

}  // namespace vseg
