#pragma once

#include <stdexcept>
#include <vector>

#include "vseg/frame_io.hpp"

namespace vseg {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Per-sampled-frame-pair change scores. raw[i] compares frames i and i+1,
/// so raw.size() == frame_count - 1. smoothed has the same length.
struct ScoreSeries {
  std::vector<double> raw;
  std::vector<double> smoothed;
  double sampling_fps = 2.0;

  std::int64_t frame_count() const {
    return static_cast<std::int64_t>(raw.size()) + 1;
  }
};

struct FrameScores {
  double brightness = 0.0;  // mean CIELAB L, scaled to [0, 255]
  double sharpness = 0.0;   // Laplacian variance, >= 0
};

/// Mean CIELAB L* over the frame, scaled to [0, 255].
double brightness(const Frame& frame, int width, int height);

/// Variance of the 3x3 Laplacian [[0,1,0],[1,-4,1],[0,1,0]] over the BT.601
/// grayscale image, replicate border handling.
double sharpness(const Frame& frame, int width, int height);

/// Mean over H, S, V of the mean absolute per-pixel channel difference,
/// all channels on a 0-255 scale. Range [0, 255].
double content_score(const Frame& a, const Frame& b, int width, int height);

/// raw[t] divided by the mean of raw over [t-window, t+window] excluding t
/// (clamped at the edges). Zero neighborhood mean yields 0 when raw[t] is 0,
/// else the sentinel 1e6.
double adaptive_score(const ScoreSeries& series, std::int64_t t, int window);

inline constexpr double kAdaptiveSentinel = 1e6;

/// Centered moving average with shrinking windows at the edges. Window must
/// be odd; window 1 is the identity.
std::vector<double> smooth(const std::vector<double>& raw, int window);

/// (v - mean) / population std. A zero std returns the input unchanged.
std::vector<double> zscore(const std::vector<double>& values);

}  // namespace vseg
