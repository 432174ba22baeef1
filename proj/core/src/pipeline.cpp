#include "vseg/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <thread>

#include <json.hpp>

namespace fs = std::filesystem;

namespace vseg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PolicySpec resolve_policy(const RunOptions& options, double duration_sec) {
  PolicySpec policy;
  if (options.strategy) {
    policy.strategy = *options.strategy;
    policy.matched_rule = "forced";
    if (*options.strategy == Strategy::kAdaptive) {
      policy.params.threshold = 1.2;
    } else if (*options.strategy == Strategy::kFallback) {
      policy.params.threshold = 1.4;
      DetectorParams content;
      content.threshold = 15.0;
      policy.content_params = content;
    } else if (*options.strategy == Strategy::kContent) {
      policy.params.threshold = 15.0;
    }
  } else {
    policy = resolve(duration_sec, options.policy);
  }
  if (options.threshold) policy.params.threshold = *options.threshold;
  if (options.minlen_sec) {
    policy.params.minlen_sec = *options.minlen_sec;
    if (policy.content_params) policy.content_params->minlen_sec = *options.minlen_sec;
  }
  if (options.interval_sec) policy.params.interval_sec = *options.interval_sec;
  return policy;
}

std::string thumbnail_name(int scene_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene_%04d.ppm", scene_index);
  return buf;
}

}  // namespace

SegmentationResult run(const fs::path& source, const RunOptions& options) {
  const auto t_total = Clock::now();
  SegmentationResult result;

  auto t_stage = Clock::now();
  auto stream = open_stream(source, options.spec);
  result.video = stream->meta();
  result.spec = stream->spec();
  result.timing.probe_sec = seconds_since(t_stage);

  result.policy = resolve_policy(options, result.video.duration_sec);

  // Pass 1: stream every frame once, scoring consecutive pairs and
  // retaining only the previous frame.
  t_stage = Clock::now();
  ScoreSeries series;
  series.sampling_fps = result.spec.sampling_fps;
  std::optional<Frame> prev;
  while (auto frame = stream->next()) {
    if (prev) {
      series.raw.push_back(
          content_score(*prev, *frame, result.spec.width, result.spec.height));
      ++result.diagnostics.pairs_scored;
    }
    prev = std::move(frame);
    ++result.diagnostics.frames_read;
  }
  if (result.diagnostics.frames_read == 0) {
    throw UnreadableSource("no frames decoded from " + source.string());
  }
  series.smoothed = smooth(series.raw, result.policy.params.smoothing_window);
  result.timing.score_sec = seconds_since(t_stage);

  t_stage = Clock::now();
  const double duration = result.video.duration_sec;
  switch (result.policy.strategy) {
    case Strategy::kAdaptive:
      result.scenes = detect_adaptive(series, result.policy.params, duration);
      result.used_strategy = "adaptive";
      break;
    case Strategy::kContent:
      result.scenes = detect_content(series, result.policy.params, duration);
      result.used_strategy = "content";
      break;
    case Strategy::kFallback: {
      DetectorParams content =
          result.policy.content_params.value_or(result.policy.params);
      auto fb = detect_fallback(series, result.policy.params, content, duration);
      result.scenes = std::move(fb.scenes);
      result.used_strategy = fb.used_strategy;
      result.diagnostics.fallback_triggered = fb.used_strategy == "fallback:content";
      break;
    }
    case Strategy::kRegularSplit:
      result.scenes = detect_regular(result.video, result.spec,
                                     result.policy.params.interval_sec);
      result.used_strategy = "regular_split";
      break;
  }
  result.timing.detect_sec = seconds_since(t_stage);

  // Pass 2: targeted fetch of keyframe candidates only.
  t_stage = Clock::now();
  auto fetcher = open_fetcher(source, result.spec);
  result.keyframes.reserve(result.scenes.size());
  int present = 0;
  for (const auto& scene : result.scenes) {
    try {
      result.keyframes.push_back(extract_keyframe(
          scene, [&](std::int64_t idx) { return fetcher->fetch(idx); },
          result.spec, options.weights));
      ++present;
    } catch (const CandidateFetchFailure&) {
      result.keyframes.push_back(std::nullopt);
    }
  }
  result.diagnostics.keyframe_coverage =
      result.scenes.empty()
          ? 0.0
          : static_cast<double>(present) / static_cast<double>(result.scenes.size());
  result.timing.keyframe_sec = seconds_since(t_stage);
  result.timing.total_sec = seconds_since(t_total);
  return result;
}

fs::path write_metadata(const SegmentationResult& result, const fs::path& out_dir,
                        bool write_thumbnails) {
  fs::create_directories(out_dir);
  using nlohmann::ordered_json;

  ordered_json video;
  video["path"] = result.video.source_path;
  video["duration_sec"] = result.video.duration_sec;
  video["sampling_fps"] = result.spec.sampling_fps;
  video["frame_width"] = result.spec.width;
  video["frame_height"] = result.spec.height;

  ordered_json params;
  params["threshold"] = result.policy.params.threshold;
  params["minlen_sec"] = result.policy.params.minlen_sec;
  params["smoothing_window"] = result.policy.params.smoothing_window;
  params["adaptive_window"] = result.policy.params.adaptive_window;
  if (result.policy.strategy == Strategy::kRegularSplit) {
    params["interval_sec"] = result.policy.params.interval_sec;
  }
  if (result.policy.content_params) {
    params["content_threshold"] = result.policy.content_params->threshold;
    params["fallback_min_scenes"] = result.policy.params.fallback_min_scenes;
  }

  ordered_json policy;
  policy["strategy"] = to_string(result.policy.strategy);
  policy["used_strategy"] = result.used_strategy;
  policy["params"] = params;

  ordered_json scenes = ordered_json::array();
  for (std::size_t i = 0; i < result.scenes.size(); ++i) {
    const auto& scene = result.scenes[i];
    ordered_json s;
    s["index"] = scene.index;
    s["start_frame"] = scene.start_frame;
    s["end_frame"] = scene.end_frame;
    s["start_sec"] = scene.start_sec;
    s["end_sec"] = scene.end_sec;
    const auto& kf = result.keyframes.at(i);
    if (kf) {
      ordered_json k;
      k["frame_index"] = kf->frame_index;
      k["time_sec"] = kf->time_sec;
      k["brightness"] = kf->brightness;
      k["sharpness"] = kf->sharpness;
      k["combined_score"] = kf->combined_score;
      k["thumbnail"] =
          write_thumbnails ? ordered_json(thumbnail_name(scene.index)) : ordered_json(nullptr);
      s["keyframe"] = k;
    } else {
      s["keyframe"] = nullptr;
    }
    scenes.push_back(s);
  }

  ordered_json diagnostics;
  diagnostics["frames_read"] = result.diagnostics.frames_read;
  diagnostics["pairs_scored"] = result.diagnostics.pairs_scored;
  diagnostics["fallback_triggered"] = result.diagnostics.fallback_triggered;
  diagnostics["keyframe_coverage"] = result.diagnostics.keyframe_coverage;

  ordered_json root;
  root["video"] = video;
  root["policy"] = policy;
  root["scenes"] = scenes;
  root["diagnostics"] = diagnostics;

  const fs::path manifest = out_dir / "scenes.json";
  {
    std::ofstream out(manifest, std::ios::trunc);
    out << root.dump(2) << "\n";
    if (!out) {
      throw std::runtime_error("failed writing " + manifest.string());
    }
  }

  if (write_thumbnails) {
    auto fetcher = open_fetcher(result.video.source_path, result.spec);
    for (std::size_t i = 0; i < result.keyframes.size(); ++i) {
      const auto& kf = result.keyframes[i];
      if (!kf) continue;
      const Frame frame = fetcher->fetch(kf->frame_index);
      write_ppm(out_dir / thumbnail_name(result.scenes[i].index), frame,
                result.spec.width, result.spec.height);
    }
  }
  return manifest;
}

std::vector<BatchEntry> run_batch(const std::vector<fs::path>& sources,
                                  int parallelism, const RunOptions& options) {
  if (parallelism < 1) {
    throw std::invalid_argument("parallelism must be >= 1");
  }
  std::vector<BatchEntry> entries(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    entries[i].source = sources[i];
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sources.size()) break;
      try {
        entries[i].outcome = run(sources[i], options);
      } catch (const std::exception& e) {
        entries[i].outcome = std::string(e.what());
      }
    }
  };
  const int workers =
      std::min<int>(parallelism, static_cast<int>(std::max<std::size_t>(sources.size(), 1)));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return entries;
}

}  // namespace vseg
