#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "test_util.hpp"
#include "vseg/pipeline.hpp"

using namespace vseg;
using testutil::TempDir;

namespace {

FrameSpec small_spec() {
  FrameSpec spec;
  spec.width = 32;
  spec.height = 18;
  return spec;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("run segments a short black|white fixture with the auto policy") {
  TempDir tmp("pipe_bw");
  const auto spec = small_spec();
  generate_synthetic(tmp.path / "video",
                     {SyntheticBlock::solid(5.0, 0, 0, 0),
                      SyntheticBlock::solid(5.0, 255, 255, 255)},
                     spec);

  RunOptions options;
  options.spec = spec;
  options.minlen_sec = 1.0;
  const auto result = run(tmp.path / "video", options);

  // 10 s duration lands in the first policy row.
  CHECK(result.policy.strategy == Strategy::kAdaptive);
  CHECK(result.used_strategy == "adaptive");
  CHECK(result.diagnostics.frames_read == 20);
  CHECK(result.diagnostics.pairs_scored == 19);
  REQUIRE(result.scenes.size() >= 2);
  bool has_cut_near_10 = false;
  for (const auto& scene : result.scenes) {
    if (scene.start_frame >= 9 && scene.start_frame <= 11) has_cut_near_10 = true;
  }
  CHECK(has_cut_near_10);
  CHECK(result.diagnostics.keyframe_coverage == doctest::Approx(1.0));
  CHECK(result.keyframes.size() == result.scenes.size());
}

TEST_CASE("run uses regular_split for very long metadata durations") {
  TempDir tmp("pipe_long");
  FrameSpec spec = small_spec();
  spec.sampling_fps = 1.0 / 30.0;  // keep the fixture small: 1 frame per 30 s
  std::vector<std::vector<std::uint8_t>> frames(480,
                                                std::vector<std::uint8_t>(spec.frame_bytes(), 60));
  write_raw_sequence(tmp.path / "video", spec, frames);

  RunOptions options;
  options.spec = spec;
  const auto result = run(tmp.path / "video", options);
  CHECK(result.video.duration_sec == doctest::Approx(14400.0));
  CHECK(result.policy.strategy == Strategy::kRegularSplit);
  CHECK(result.scenes.size() == 480);
  for (std::size_t i = 0; i + 1 < result.scenes.size(); ++i) {
    CHECK(result.scenes[i].duration_sec() == doctest::Approx(30.0));
  }
}

TEST_CASE("run rejects unreadable sources") {
  CHECK_THROWS_AS(run("/nonexistent/video.mp4", RunOptions{}), UnreadableSource);
}

TEST_CASE("write_metadata emits the documented schema") {
  TempDir tmp("pipe_meta");
  const auto spec = small_spec();
  generate_synthetic(tmp.path / "video",
                     {SyntheticBlock::solid(4.0, 200, 40, 40),
                      SyntheticBlock::solid(4.0, 40, 200, 40),
                      SyntheticBlock::solid(4.0, 40, 40, 200)},
                     spec);

  RunOptions options;
  options.spec = spec;
  options.strategy = Strategy::kContent;
  options.threshold = 15.0;
  options.minlen_sec = 1.0;
  const auto result = run(tmp.path / "video", options);
  const auto manifest = write_metadata(result, tmp.path / "out");

  const auto root = nlohmann::json::parse(slurp(manifest));
  CHECK(root.at("video").at("duration_sec").get<double>() == doctest::Approx(12.0));
  CHECK(root.at("video").at("frame_width").get<int>() == spec.width);
  CHECK(root.at("policy").at("strategy").get<std::string>() == "content");
  CHECK(root.at("policy").at("used_strategy").get<std::string>() == "content");
  CHECK(root.at("policy").at("params").contains("threshold"));
  CHECK(root.at("diagnostics").at("frames_read").get<int>() == 24);
  CHECK(root.at("diagnostics").at("pairs_scored").get<int>() == 23);
  CHECK(root.at("diagnostics").at("keyframe_coverage").get<double>() ==
        doctest::Approx(1.0));

  const auto& scenes = root.at("scenes");
  REQUIRE(scenes.size() == result.scenes.size());
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    // Round-trip the scene list back into Scene values.
    Scene s;
    s.index = scenes[i].at("index").get<int>();
    s.start_frame = scenes[i].at("start_frame").get<std::int64_t>();
    s.end_frame = scenes[i].at("end_frame").get<std::int64_t>();
    s.start_sec = scenes[i].at("start_sec").get<double>();
    s.end_sec = scenes[i].at("end_sec").get<double>();
    CHECK(s == result.scenes[i]);

    REQUIRE(scenes[i].contains("keyframe"));
    const auto& kf = scenes[i].at("keyframe");
    REQUIRE_FALSE(kf.is_null());
    const auto thumb = kf.at("thumbnail").get<std::string>();
    CHECK(std::filesystem::exists(tmp.path / "out" / thumb));
    CHECK(kf.at("frame_index").get<std::int64_t>() >= s.start_frame);
    CHECK(kf.at("frame_index").get<std::int64_t>() < s.end_frame);
  }
}

TEST_CASE("two runs produce byte-identical scenes.json") {
  TempDir tmp("pipe_determinism");
  const auto spec = small_spec();
  generate_synthetic(tmp.path / "video",
                     {SyntheticBlock::noise(3.0, 1), SyntheticBlock::noise(3.0, 2),
                      SyntheticBlock::noise(3.0, 3)},
                     spec);

  RunOptions options;
  options.spec = spec;
  options.minlen_sec = 1.0;
  const auto m1 = write_metadata(run(tmp.path / "video", options), tmp.path / "out1");
  const auto m2 = write_metadata(run(tmp.path / "video", options), tmp.path / "out2");
  CHECK(slurp(m1) == slurp(m2));
  CHECK_FALSE(slurp(m1).empty());
}

TEST_CASE("run_batch") {
  TempDir tmp("pipe_batch");
  const auto spec = small_spec();
  std::vector<std::filesystem::path> sources;
  for (int i = 0; i < 3; ++i) {
    const auto dir = tmp.path / ("v" + std::to_string(i));
    generate_synthetic(dir,
                       {SyntheticBlock::noise(3.0, 10 + i), SyntheticBlock::noise(3.0, 20 + i)},
                       spec);
    sources.push_back(dir);
  }

  RunOptions options;
  options.spec = spec;

  SUBCASE("all valid sources succeed") {
    const auto batch = run_batch(sources, 2, options);
    REQUIRE(batch.size() == 3);
    for (const auto& entry : batch) CHECK(entry.ok());
  }
  SUBCASE("a corrupt source fails alone") {
    sources.push_back(tmp.path / "missing");
    const auto batch = run_batch(sources, 2, options);
    REQUIRE(batch.size() == 4);
    int ok = 0, failed = 0;
    for (const auto& entry : batch) entry.ok() ? ++ok : ++failed;
    CHECK(ok == 3);
    CHECK(failed == 1);
  }
  SUBCASE("empty source list") {
    CHECK(run_batch({}, 2, options).empty());
  }
  SUBCASE("invalid parallelism") {
    CHECK_THROWS_AS(run_batch(sources, 0, options), std::invalid_argument);
  }
}
