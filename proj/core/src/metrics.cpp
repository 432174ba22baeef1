#include "vseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vseg {

namespace {

inline double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

// CIELAB L* of one sRGB pixel (D65 white), on the 0-100 scale.
inline double lab_l(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const double y = 0.2126729 * srgb_to_linear(r / 255.0) +
                   0.7151522 * srgb_to_linear(g / 255.0) +
                   0.0721750 * srgb_to_linear(b / 255.0);
  constexpr double kEps = 216.0 / 24389.0;       // (6/29)^3
  constexpr double kKappa = 24389.0 / 27.0;      // (29/3)^3
  const double f = y > kEps ? std::cbrt(y) : (kKappa * y + 16.0) / 116.0;
  return 116.0 * f - 16.0;
}

// HSV with every channel on a 0-255 scale (H mapped from 360 degrees).
inline void rgb_to_hsv255(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8,
                          double& h, double& s, double& v) {
  const double r = r8, g = g8, b = b8;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  v = mx;
  s = mx > 0 ? delta / mx * 255.0 : 0.0;
  double hue = 0.0;
  if (delta > 0) {
    if (mx == r) {
      hue = 60.0 * std::fmod((g - b) / delta, 6.0);
    } else if (mx == g) {
      hue = 60.0 * ((b - r) / delta + 2.0);
    } else {
      hue = 60.0 * ((r - g) / delta + 4.0);
    }
    if (hue < 0) hue += 360.0;
  }
  h = hue * 255.0 / 360.0;
}

void check_frame(const Frame& frame, int width, int height) {
  if (frame.pixels.size() != static_cast<std::size_t>(width) * height * 3) {
    throw DimensionMismatch("pixel buffer does not match width*height*3");
  }
}

}  // namespace

double brightness(const Frame& frame, int width, int height) {
  check_frame(frame, width, height);
  double sum = 0.0;
  const auto* p = frame.pixels.data();
  const std::size_t n = static_cast<std::size_t>(width) * height;
  for (std::size_t i = 0; i < n; ++i, p += 3) {
    sum += lab_l(p[0], p[1], p[2]);
  }
  return sum / static_cast<double>(n) * 255.0 / 100.0;
}

double sharpness(const Frame& frame, int width, int height) {
  check_frame(frame, width, height);
  std::vector<double> gray(static_cast<std::size_t>(width) * height);
  const auto* p = frame.pixels.data();
  for (auto& g : gray) {
    g = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
    p += 3;
  }
  const auto at = [&](int x, int y) {
    x = std::clamp(x, 0, width - 1);   // replicate border
    y = std::clamp(y, 0, height - 1);
    return gray[static_cast<std::size_t>(y) * width + x];
  };
  double sum = 0.0, sum_sq = 0.0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double lap = at(x - 1, y) + at(x + 1, y) + at(x, y - 1) +
                         at(x, y + 1) - 4.0 * at(x, y);
      sum += lap;
      sum_sq += lap * lap;
    }
  }
  const double n = static_cast<double>(width) * height;
  const double mean = sum / n;
  return std::max(0.0, sum_sq / n - mean * mean);
}

double content_score(const Frame& a, const Frame& b, int width, int height) {
  check_frame(a, width, height);
  check_frame(b, width, height);
  const auto* pa = a.pixels.data();
  const auto* pb = b.pixels.data();
  const std::size_t n = static_cast<std::size_t>(width) * height;
  double dh = 0.0, ds = 0.0, dv = 0.0;
  for (std::size_t i = 0; i < n; ++i, pa += 3, pb += 3) {
    double ha, sa, va, hb, sb, vb;
    rgb_to_hsv255(pa[0], pa[1], pa[2], ha, sa, va);
    rgb_to_hsv255(pb[0], pb[1], pb[2], hb, sb, vb);
    dh += std::abs(ha - hb);
    ds += std::abs(sa - sb);
    dv += std::abs(va - vb);
  }
  return (dh + ds + dv) / (3.0 * static_cast<double>(n));
}

double adaptive_score(const ScoreSeries& series, std::int64_t t, int window) {
  const auto n = static_cast<std::int64_t>(series.raw.size());
  if (t < 0 || t >= n) {
    throw std::out_of_range("adaptive_score index out of range");
  }
  if (window < 1) {
    throw std::invalid_argument("adaptive window must be >= 1");
  }
  const std::int64_t lo = std::max<std::int64_t>(0, t - window);
  const std::int64_t hi = std::min(n - 1, t + window);
  double sum = 0.0;
  std::int64_t count = 0;
  for (std::int64_t i = lo; i <= hi; ++i) {
    if (i == t) continue;
    sum += series.raw[static_cast<std::size_t>(i)];
    ++count;
  }
  const double value = series.raw[static_cast<std::size_t>(t)];
  if (count == 0 || sum == 0.0) {
    return value == 0.0 ? 0.0 : kAdaptiveSentinel;
  }
  return value / (sum / static_cast<double>(count));
}

std::vector<double> smooth(const std::vector<double>& raw, int window) {
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("smoothing window must be odd and >= 1");
  }
  const auto n = static_cast<std::int64_t>(raw.size());
  std::vector<double> out(raw.size());
  const std::int64_t half = window / 2;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t lo = std::max<std::int64_t>(0, i - half);
    const std::int64_t hi = std::min(n - 1, i + half);
    double sum = 0.0;
    for (std::int64_t j = lo; j <= hi; ++j) sum += raw[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<double> zscore(const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("zscore needs a non-empty input");
  }
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double std_dev = std::sqrt(var / n);  // population std
  if (std_dev == 0.0) {
    return values;
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back((v - mean) / std_dev);
  return out;
}

}  // namespace vseg
