#include "vseg/keyframes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace vseg {

std::vector<std::int64_t> sample_indices(const Scene& scene, int n) {
  if (n < 1) {
    throw std::invalid_argument("candidate count must be >= 1");
  }
  const std::int64_t first = scene.start_frame;
  const std::int64_t last = scene.end_frame - 1;
  const std::int64_t span = scene.frame_span();
  if (span <= 0) {
    throw std::invalid_argument("scene is empty");
  }
  if (span <= n) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(span));
    for (std::int64_t i = 0; i < span; ++i) all[static_cast<std::size_t>(i)] = first + i;
    return all;
  }
  if (n == 1) {
    return {first + span / 2};
  }
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double pos = static_cast<double>(first) +
                       static_cast<double>(i) * static_cast<double>(last - first) /
                           static_cast<double>(n - 1);
    const auto idx = std::llround(pos);
    if (out.empty() || out.back() != idx) out.push_back(idx);
  }
  return out;
}

std::size_t choose_best_frame(const std::vector<double>& brightness_scores,
                              const std::vector<double>& sharpness_scores,
                              const KeyframeWeights& weights) {
  if (brightness_scores.empty()) {
    throw std::invalid_argument("empty candidate arrays");
  }
  if (brightness_scores.size() != sharpness_scores.size()) {
    throw std::invalid_argument("score arrays differ in length");
  }
  const auto zb = zscore(brightness_scores);
  const auto zs = zscore(sharpness_scores);
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < zb.size(); ++i) {
    const double combined = weights.w_sharp * zs[i] + weights.w_bright * zb[i];
    if (combined > best_score) {  // ties keep the earliest index
      best_score = combined;
      best = i;
    }
  }
  return best;
}

KeyframeRecord extract_keyframe(const Scene& scene,
                                const std::function<Frame(std::int64_t)>& fetch,
                                const FrameSpec& spec,
                                const KeyframeWeights& weights) {
  const auto indices = sample_indices(scene, weights.n_candidates);
  std::vector<double> bright, sharp;
  bright.reserve(indices.size());
  sharp.reserve(indices.size());
  for (std::int64_t idx : indices) {
    Frame f;
    try {
      f = fetch(idx);
    } catch (const std::exception& e) {
      throw CandidateFetchFailure("fetching frame " + std::to_string(idx) + ": " +
                                  e.what());
    }
    bright.push_back(brightness(f, spec.width, spec.height));
    sharp.push_back(sharpness(f, spec.width, spec.height));
  }
  const std::size_t win = choose_best_frame(bright, sharp, weights);

  KeyframeRecord record;
  record.scene_index = scene.index;
  record.frame_index = indices[win];
  record.time_sec = static_cast<double>(indices[win]) / spec.sampling_fps;
  record.brightness = bright[win];
  record.sharpness = sharp[win];
  record.combined_score = weights.w_sharp * sharp[win] + weights.w_bright * bright[win];
  record.candidate_count = static_cast<int>(indices.size());
  return record;
}

void write_ppm(const std::filesystem::path& path, const Frame& frame,
               int width, int height) {
  if (frame.pixels.size() != static_cast<std::size_t>(width) * height * 3) {
    throw std::invalid_argument("frame buffer does not match dimensions");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << "P6\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixels.size()));
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

}  // namespace vseg
