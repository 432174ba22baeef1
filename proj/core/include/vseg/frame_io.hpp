#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vseg {

struct UnreadableSource : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The decoder exited before the expected frame count. Frames already
// yielded remain valid; the stream just ends early.
struct TruncatedStream : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Target geometry and sampling rate for decoded frames.
/// Pixel layout is always interleaved 8-bit RGB.
struct FrameSpec {
  int width = 256;
  int height = 144;
  double sampling_fps = 2.0;

  std::size_t frame_bytes() const {
    return static_cast<std::size_t>(width) * height * 3;
  }
  void validate() const;
};

/// One sampled frame: ordinal index, source timestamp, RGB pixels.
struct Frame {
  std::int64_t index = 0;
  double time_sec = 0.0;
  std::vector<std::uint8_t> pixels;  // width*height*3, row-major, top-left origin
};

struct VideoMeta {
  double duration_sec = 0.0;
  std::string source_path;
  std::optional<double> source_fps;
};

/// Number of sampled frames for a clip of the given duration: ceil(D*fps), min 1.
std::int64_t frame_count_for(double duration_sec, double sampling_fps);

/// Single-consumer frame stream. Not shareable across threads; one stream
/// per video, many streams may run concurrently.
class FrameStream {
 public:
  virtual ~FrameStream() = default;
  virtual const VideoMeta& meta() const = 0;
  virtual const FrameSpec& spec() const = 0;
  /// Next frame, or nullopt at end of stream.
  virtual std::optional<Frame> next() = 0;
  /// Set when the decoder ended before the expected frame count.
  virtual bool truncated() const { return false; }
};

/// Random access to individual sampled frames, used by the keyframe pass.
class FrameFetcher {
 public:
  virtual ~FrameFetcher() = default;
  virtual Frame fetch(std::int64_t index) = 0;
};

/// Opens `source` as a frame stream. A directory containing meta.json is
/// read as a raw-frame sequence; anything else is handed to the external
/// decoder subprocess (ffmpeg), resized and resampled to `spec`.
std::unique_ptr<FrameStream> open_stream(const std::filesystem::path& source,
                                         const FrameSpec& spec);

/// Random-access fetcher over the same source. For raw sequences this reads
/// individual frame files; for decoded video it re-streams and picks.
std::unique_ptr<FrameFetcher> open_fetcher(const std::filesystem::path& source,
                                           const FrameSpec& spec);

/// True when the path looks like a raw-frame sequence directory.
bool is_raw_sequence(const std::filesystem::path& source);

// ---- Raw-frame sequence format (test path) --------------------------------
// A directory with meta.json {width, height, sampling_fps, frame_count} and
// files frame_%06d.rgb of exactly width*height*3 bytes each.

void write_raw_sequence(const std::filesystem::path& dir, const FrameSpec& spec,
                        const std::vector<std::vector<std::uint8_t>>& frames);

// ---- Synthetic fixtures ---------------------------------------------------

struct SyntheticBlock {
  double duration_sec = 0.0;
  // Solid fill when rgb is set; otherwise a fixed noise pattern from seed
  // (same pixels for every frame of the block).
  std::optional<std::array<std::uint8_t, 3>> rgb;
  std::uint64_t noise_seed = 0;

  static SyntheticBlock solid(double dur, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return {dur, std::array<std::uint8_t, 3>{r, g, b}, 0};
  }
  static SyntheticBlock noise(double dur, std::uint64_t seed) {
    return {dur, std::nullopt, seed};
  }
};

/// Writes a raw-frame sequence of consecutive blocks and returns the sampled
/// frame indices where blocks change (ground-truth cuts).
std::vector<std::int64_t> generate_synthetic(const std::filesystem::path& dir,
                                             const std::vector<SyntheticBlock>& blocks,
                                             const FrameSpec& spec);

}  // namespace vseg
