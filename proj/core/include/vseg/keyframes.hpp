#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "vseg/detectors.hpp"
#include "vseg/metrics.hpp"

namespace vseg {

struct CandidateFetchFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KeyframeWeights {
  double w_sharp = 0.7;
  double w_bright = 0.3;
  int n_candidates = 5;
};

struct KeyframeRecord {
  int scene_index = 0;
  std::int64_t frame_index = 0;
  double time_sec = 0.0;
  double brightness = 0.0;  // raw component scores of the winner
  double sharpness = 0.0;
  double combined_score = 0.0;
  int candidate_count = 0;
};

/// Up to n equidistant frame indices inside [start_frame, end_frame),
/// endpoints included, duplicates removed. n = 1 picks the middle frame;
/// a scene with fewer than n frames returns all of them.
std::vector<std::int64_t> sample_indices(const Scene& scene, int n);

/// Index of the best candidate: z-score each array independently (zero-std
/// arrays pass through unchanged), combine as w_sharp*z_sharp +
/// w_bright*z_bright, first-occurrence argmax.
std::size_t choose_best_frame(const std::vector<double>& brightness_scores,
                              const std::vector<double>& sharpness_scores,
                              const KeyframeWeights& weights);

/// Scores the sampled candidates of one scene and returns the winner with
/// its raw component scores. Fetch failures propagate as
/// CandidateFetchFailure; the caller reports the scene without a keyframe.
KeyframeRecord extract_keyframe(const Scene& scene,
                                const std::function<Frame(std::int64_t)>& fetch,
                                const FrameSpec& spec,
                                const KeyframeWeights& weights);

/// Writes a frame as a binary PPM (P6) image.
void write_ppm(const std::filesystem::path& path, const Frame& frame,
               int width, int height);

}  // namespace vseg
