#include "vseg/detectors.hpp"

#include <cmath>

namespace vseg {

std::int64_t minlen_frames_for(double minlen_sec, double sampling_fps) {
  return std::llround(minlen_sec * sampling_fps);
}

std::vector<std::int64_t> detect_boundaries(const std::vector<double>& scores,
                                            double threshold,
                                            std::int64_t minlen_frames) {
  const auto n = static_cast<std::int64_t>(scores.size());
  std::vector<std::int64_t> accepted;
  std::int64_t prev = 0;
  for (std::int64_t t = 0; t < n; ++t) {
    const double s = scores[static_cast<std::size_t>(t)];
    if (!(s > threshold)) continue;
    // Strict local maximum; a plateau counts once, at its leftmost index.
    // A plateau must be entered by a strict rise, so a cut at the very
    // first pair never triggers and a constant series has no candidates.
    if (t == 0 || !(s > scores[static_cast<std::size_t>(t - 1)])) continue;
    std::int64_t plateau_end = t;
    while (plateau_end + 1 < n &&
           scores[static_cast<std::size_t>(plateau_end + 1)] == s) {
      ++plateau_end;
    }
    const bool falls = plateau_end == n - 1 ||
                       s > scores[static_cast<std::size_t>(plateau_end + 1)];
    if (!falls) continue;
    if (!accepted.empty() && t - prev < minlen_frames) continue;
    accepted.push_back(t);
    prev = t;
  }
  return accepted;
}

std::vector<Scene> scenes_from_boundaries(const std::vector<std::int64_t>& boundaries,
                                          std::int64_t frame_count,
                                          double sampling_fps,
                                          double duration_sec) {
  std::vector<Scene> scenes;
  std::int64_t start = 0;
  auto push = [&](std::int64_t end) {
    Scene s;
    s.index = static_cast<int>(scenes.size());
    s.start_frame = start;
    s.end_frame = end;
    s.start_sec = static_cast<double>(start) / sampling_fps;
    s.end_sec = static_cast<double>(end) / sampling_fps;
    scenes.push_back(s);
    start = end;
  };
  for (std::int64_t b : boundaries) {
    // Boundary b cuts between frames b and b+1.
    if (b + 1 > start && b + 1 < frame_count) push(b + 1);
  }
  push(frame_count);
  if (duration_sec > 0.0) {
    scenes.back().end_sec = duration_sec;
  }
  return scenes;
}

std::vector<Scene> detect_content(const ScoreSeries& series, const DetectorParams& params,
                                  double duration_sec) {
  const auto smoothed = smooth(series.raw, params.smoothing_window);
  const auto boundaries =
      detect_boundaries(smoothed, params.threshold,
                        minlen_frames_for(params.minlen_sec, series.sampling_fps));
  return scenes_from_boundaries(boundaries, series.frame_count(), series.sampling_fps,
                                duration_sec);
}

std::vector<Scene> detect_adaptive(const ScoreSeries& series, const DetectorParams& params,
                                   double duration_sec) {
  const auto n = static_cast<std::int64_t>(series.raw.size());
  std::vector<double> ratios(series.raw.size());
  for (std::int64_t t = 0; t < n; ++t) {
    double r = adaptive_score(series, t, params.adaptive_window);
    // Ratio spikes in near-static footage are ignored below an absolute
    // raw-score floor.
    if (series.raw[static_cast<std::size_t>(t)] <= params.content_floor) {
      r = 0.0;
    }
    ratios[static_cast<std::size_t>(t)] = r;
  }
  const auto boundaries =
      detect_boundaries(ratios, params.threshold,
                        minlen_frames_for(params.minlen_sec, series.sampling_fps));
  return scenes_from_boundaries(boundaries, series.frame_count(), series.sampling_fps,
                                duration_sec);
}

FallbackResult detect_fallback(const ScoreSeries& series,
                               const DetectorParams& adaptive_params,
                               const DetectorParams& content_params,
                               double duration_sec) {
  FallbackResult result;
  result.scenes = detect_adaptive(series, adaptive_params, duration_sec);
  if (static_cast<int>(result.scenes.size()) >= adaptive_params.fallback_min_scenes) {
    result.used_strategy = "fallback:adaptive";
    return result;
  }
  result.scenes = detect_content(series, content_params, duration_sec);
  result.used_strategy = "fallback:content";
  return result;
}

std::vector<Scene> detect_regular(const VideoMeta& meta, const FrameSpec& spec,
                                  double interval_sec) {
  if (!(interval_sec > 0)) {
    throw std::invalid_argument("interval_sec must be positive");
  }
  const double duration = meta.duration_sec;
  const std::int64_t frame_count = frame_count_for(duration, spec.sampling_fps);
  std::vector<std::int64_t> boundaries;
  for (int k = 1; k * interval_sec < duration; ++k) {
    const double remainder = duration - k * interval_sec;
    if (remainder < 1.0) break;  // sub-second tail merges into the previous scene
    const auto frame = std::llround(k * interval_sec * spec.sampling_fps);
    if (frame > 0 && frame < frame_count) {
      boundaries.push_back(frame - 1);  // cut between frame-1 and frame
    }
  }
  return scenes_from_boundaries(boundaries, frame_count, spec.sampling_fps, duration);
}

}  // namespace vseg
