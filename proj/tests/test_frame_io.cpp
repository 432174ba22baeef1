#include <doctest.h>

#include <fstream>

#include "test_util.hpp"
#include "vseg/frame_io.hpp"

using namespace vseg;
using testutil::TempDir;

TEST_CASE("frame_count_for rounds up and never returns zero") {
  CHECK(frame_count_for(60.0, 2.0) == 120);
  CHECK(frame_count_for(0.4, 2.0) == 1);
  CHECK(frame_count_for(0.6, 2.0) == 2);
  CHECK(frame_count_for(0.0001, 2.0) == 1);
}

TEST_CASE("FrameSpec validation") {
  FrameSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.width = 8;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = FrameSpec{};
  spec.sampling_fps = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("raw sequence round-trips byte-exactly") {
  TempDir tmp("raw_roundtrip");
  FrameSpec spec;
  spec.width = 32;
  spec.height = 16;

  std::vector<std::vector<std::uint8_t>> frames;
  std::mt19937 rng(7);
  for (int i = 0; i < 10; ++i) {
    std::vector<std::uint8_t> px(spec.frame_bytes());
    for (auto& b : px) b = static_cast<std::uint8_t>(rng());
    frames.push_back(std::move(px));
  }
  write_raw_sequence(tmp.path, spec, frames);

  auto stream = open_stream(tmp.path, spec);
  CHECK(stream->meta().duration_sec == doctest::Approx(5.0));
  for (int i = 0; i < 10; ++i) {
    auto f = stream->next();
    REQUIRE(f.has_value());
    CHECK(f->index == i);
    CHECK(f->pixels == frames[static_cast<std::size_t>(i)]);
  }
  CHECK_FALSE(stream->next().has_value());
}

TEST_CASE("raw stream yields monotone timestamps at exactly 1/fps") {
  TempDir tmp("raw_timestamps");
  FrameSpec spec;
  spec.width = 16;
  spec.height = 16;
  spec.sampling_fps = 4.0;
  generate_synthetic(tmp.path, {SyntheticBlock::solid(2.0, 10, 20, 30)}, spec);

  auto stream = open_stream(tmp.path, spec);
  double prev = -1.0;
  std::int64_t count = 0;
  while (auto f = stream->next()) {
    if (count > 0) CHECK(f->time_sec - prev == doctest::Approx(0.25));
    prev = f->time_sec;
    ++count;
  }
  CHECK(count == 8);
}

TEST_CASE("random-access fetcher matches streamed frames") {
  TempDir tmp("raw_fetch");
  FrameSpec spec;
  spec.width = 16;
  spec.height = 16;
  generate_synthetic(tmp.path,
                     {SyntheticBlock::noise(2.0, 1), SyntheticBlock::noise(2.0, 2)}, spec);

  auto stream = open_stream(tmp.path, spec);
  auto fetcher = open_fetcher(tmp.path, spec);
  while (auto f = stream->next()) {
    CHECK(fetcher->fetch(f->index).pixels == f->pixels);
  }
  CHECK_THROWS_AS(fetcher->fetch(99), std::out_of_range);
}

TEST_CASE("open_stream rejects unreadable sources") {
  CHECK_THROWS_AS(open_stream("/nonexistent/clip.mp4", FrameSpec{}), UnreadableSource);

  TempDir tmp("bad_sources");
  SUBCASE("directory without meta.json") {
    CHECK_THROWS_AS(open_stream(tmp.path, FrameSpec{}), UnreadableSource);
  }
  SUBCASE("corrupt meta.json") {
    std::ofstream(tmp.path / "meta.json") << "{not json";
    CHECK_THROWS_AS(open_stream(tmp.path, FrameSpec{}), UnreadableSource);
  }
  SUBCASE("missing frame file") {
    std::ofstream(tmp.path / "meta.json")
        << R"({"width":16,"height":16,"sampling_fps":2,"frame_count":3})";
    CHECK_THROWS_AS(
        [&] {
          auto s = open_stream(tmp.path, FrameSpec{});
          while (s->next()) {
          }
        }(),
        UnreadableSource);
  }
  SUBCASE("non-video file goes to the decoder and fails its probe") {
    const auto file = tmp.path / "garbage.mp4";
    std::ofstream(file) << "this is not a video";
    CHECK_THROWS_AS(open_stream(file, FrameSpec{}), UnreadableSource);
  }
}

TEST_CASE("generate_synthetic plants cuts at block boundaries") {
  FrameSpec spec;
  spec.width = 16;
  spec.height = 16;

  SUBCASE("two solid blocks") {
    TempDir tmp("synth_two");
    auto cuts = generate_synthetic(
        tmp.path,
        {SyntheticBlock::solid(5.0, 0, 0, 0), SyntheticBlock::solid(5.0, 255, 255, 255)},
        spec);
    CHECK(cuts == std::vector<std::int64_t>{10});
    auto stream = open_stream(tmp.path, spec);
    std::int64_t n = 0;
    while (stream->next()) ++n;
    CHECK(n == 20);
  }
  SUBCASE("single block has no cuts") {
    TempDir tmp("synth_one");
    auto cuts = generate_synthetic(tmp.path, {SyntheticBlock::solid(3.0, 128, 128, 128)}, spec);
    CHECK(cuts.empty());
    auto stream = open_stream(tmp.path, spec);
    std::int64_t n = 0;
    while (stream->next()) ++n;
    CHECK(n == 6);
  }
  SUBCASE("three noise blocks") {
    TempDir tmp("synth_noise");
    auto cuts = generate_synthetic(tmp.path,
                                   {SyntheticBlock::noise(2.0, 1), SyntheticBlock::noise(2.0, 2),
                                    SyntheticBlock::noise(2.0, 3)},
                                   spec);
    CHECK(cuts == std::vector<std::int64_t>{4, 8});
  }
  SUBCASE("noise is constant within a block") {
    TempDir tmp("synth_static_noise");
    generate_synthetic(tmp.path, {SyntheticBlock::noise(2.0, 42)}, spec);
    auto fetcher = open_fetcher(tmp.path, spec);
    CHECK(fetcher->fetch(0).pixels == fetcher->fetch(3).pixels);
  }
  SUBCASE("invalid blocks are rejected") {
    TempDir tmp("synth_bad");
    CHECK_THROWS_AS(generate_synthetic(tmp.path, {}, spec), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic(tmp.path, {SyntheticBlock::solid(0.0, 0, 0, 0)}, spec),
                    std::invalid_argument);
  }
}
