// Microbenchmarks for the per-frame scoring kernels and the boundary
// detector, the hot paths of the streaming pass.

#include <random>

#include <benchmark/benchmark.h>

#include "vseg/detectors.hpp"
#include "vseg/metrics.hpp"

namespace {

vseg::Frame random_frame(int width, int height, std::uint32_t seed) {
  vseg::Frame f;
  f.pixels.resize(static_cast<std::size_t>(width) * height * 3);
  std::mt19937 rng(seed);
  for (auto& b : f.pixels) b = static_cast<std::uint8_t>(rng());
  return f;
}

void BM_ContentScore(benchmark::State& state) {
  const int w = 256, h = 144;
  const auto a = random_frame(w, h, 1);
  const auto b = random_frame(w, h, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vseg::content_score(a, b, w, h));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ContentScore);

void BM_Brightness(benchmark::State& state) {
  const int w = 256, h = 144;
  const auto f = random_frame(w, h, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vseg::brightness(f, w, h));
  }
}
BENCHMARK(BM_Brightness);

void BM_Sharpness(benchmark::State& state) {
  const int w = 256, h = 144;
  const auto f = random_frame(w, h, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vseg::sharpness(f, w, h));
  }
}
BENCHMARK(BM_Sharpness);

void BM_DetectContent(benchmark::State& state) {
  vseg::ScoreSeries series;
  series.sampling_fps = 2.0;
  series.raw.resize(static_cast<std::size_t>(state.range(0)));
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 100.0);
  for (auto& v : series.raw) v = dist(rng);
  vseg::DetectorParams params;
  params.minlen_sec = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vseg::detect_content(series, params));
  }
}
BENCHMARK(BM_DetectContent)->Arg(1 << 10)->Arg(1 << 14);

}  // namespace

BENCHMARK_MAIN();
