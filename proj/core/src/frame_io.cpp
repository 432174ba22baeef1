#include "vseg/frame_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace vseg {

void FrameSpec::validate() const {
  if (width < 16 || height < 16) {
    throw std::invalid_argument("frame size must be at least 16x16");
  }
  if (!(sampling_fps > 0)) {
    throw std::invalid_argument("sampling_fps must be positive");
  }
}

std::int64_t frame_count_for(double duration_sec, double sampling_fps) {
  auto n = static_cast<std::int64_t>(std::ceil(duration_sec * sampling_fps));
  return std::max<std::int64_t>(n, 1);
}

bool is_raw_sequence(const fs::path& source) {
  return fs::is_directory(source) && fs::exists(source / "meta.json");
}

namespace {

std::string frame_filename(std::int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06lld.rgb", static_cast<long long>(index));
  return buf;
}

struct RawMeta {
  FrameSpec spec;
  std::int64_t frame_count = 0;
};

RawMeta read_raw_meta(const fs::path& dir) {
  std::ifstream in(dir / "meta.json");
  if (!in) {
    throw UnreadableSource("cannot open " + (dir / "meta.json").string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UnreadableSource("bad meta.json in " + dir.string() + ": " + e.what());
  }
  RawMeta m;
  try {
    m.spec.width = j.at("width").get<int>();
    m.spec.height = j.at("height").get<int>();
    m.spec.sampling_fps = j.at("sampling_fps").get<double>();
    m.frame_count = j.at("frame_count").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw UnreadableSource("incomplete meta.json in " + dir.string() + ": " + e.what());
  }
  m.spec.validate();
  if (m.frame_count < 1) {
    throw UnreadableSource("meta.json frame_count must be >= 1");
  }
  return m;
}

Frame read_raw_frame(const fs::path& dir, std::int64_t index, const FrameSpec& spec) {
  const fs::path file = dir / frame_filename(index);
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw UnreadableSource("missing frame file " + file.string());
  }
  Frame f;
  f.index = index;
  f.time_sec = static_cast<double>(index) / spec.sampling_fps;
  f.pixels.resize(spec.frame_bytes());
  in.read(reinterpret_cast<char*>(f.pixels.data()),
          static_cast<std::streamsize>(f.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(f.pixels.size())) {
    throw UnreadableSource("short frame file " + file.string());
  }
  return f;
}

class RawSequenceStream final : public FrameStream {
 public:
  explicit RawSequenceStream(fs::path dir) : dir_(std::move(dir)) {
    RawMeta m = read_raw_meta(dir_);
    spec_ = m.spec;
    frame_count_ = m.frame_count;
    meta_.duration_sec = static_cast<double>(frame_count_) / spec_.sampling_fps;
    meta_.source_path = dir_.string();
    meta_.source_fps = spec_.sampling_fps;
  }

  const VideoMeta& meta() const override { return meta_; }
  const FrameSpec& spec() const override { return spec_; }

  std::optional<Frame> next() override {
    if (next_index_ >= frame_count_) return std::nullopt;
    return read_raw_frame(dir_, next_index_++, spec_);
  }

 private:
  fs::path dir_;
  FrameSpec spec_;
  VideoMeta meta_;
  std::int64_t frame_count_ = 0;
  std::int64_t next_index_ = 0;
};

class RawSequenceFetcher final : public FrameFetcher {
 public:
  explicit RawSequenceFetcher(fs::path dir) : dir_(std::move(dir)) {
    RawMeta m = read_raw_meta(dir_);
    spec_ = m.spec;
    frame_count_ = m.frame_count;
  }

  Frame fetch(std::int64_t index) override {
    if (index < 0 || index >= frame_count_) {
      throw std::out_of_range("frame index out of range");
    }
    return read_raw_frame(dir_, index, spec_);
  }

 private:
  fs::path dir_;
  FrameSpec spec_;
  std::int64_t frame_count_ = 0;
};

// ---- External decoder subprocess ------------------------------------------

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

double probe_duration(const fs::path& source) {
  const std::string cmd =
      "ffprobe -v error -show_entries format=duration -of csv=p=0 " +
      shell_quote(source.string()) + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    throw UnreadableSource("failed to start ffprobe for " + source.string());
  }
  char buf[128];
  std::string out;
  while (std::fgets(buf, sizeof(buf), pipe)) out += buf;
  const int status = pclose(pipe);
  double duration = 0.0;
  try {
    duration = std::stod(out);
  } catch (...) {
    duration = 0.0;
  }
  if (status != 0 || !(duration > 0)) {
    throw UnreadableSource("could not probe duration of " + source.string());
  }
  return duration;
}

class DecoderStream final : public FrameStream {
 public:
  DecoderStream(fs::path source, const FrameSpec& spec)
      : source_(std::move(source)), spec_(spec) {
    spec_.validate();
    meta_.duration_sec = probe_duration(source_);
    meta_.source_path = source_.string();
    expected_frames_ = frame_count_for(meta_.duration_sec, spec_.sampling_fps);

    std::ostringstream cmd;
    cmd << "ffmpeg -v error -i " << shell_quote(source_.string()) << " -vf fps="
        << spec_.sampling_fps << ",scale=" << spec_.width << ":" << spec_.height
        << " -f rawvideo -pix_fmt rgb24 - 2>/dev/null";
    pipe_ = popen(cmd.str().c_str(), "r");
    if (!pipe_) {
      throw UnreadableSource("failed to start decoder for " + source_.string());
    }
  }

  ~DecoderStream() override {
    if (pipe_) pclose(pipe_);
  }

  DecoderStream(const DecoderStream&) = delete;
  DecoderStream& operator=(const DecoderStream&) = delete;

  const VideoMeta& meta() const override { return meta_; }
  const FrameSpec& spec() const override { return spec_; }
  bool truncated() const override { return truncated_; }

  std::optional<Frame> next() override {
    if (!pipe_) return std::nullopt;
    Frame f;
    f.index = next_index_;
    f.time_sec = static_cast<double>(next_index_) / spec_.sampling_fps;
    f.pixels.resize(spec_.frame_bytes());
    const std::size_t got =
        std::fread(f.pixels.data(), 1, f.pixels.size(), pipe_);
    if (got != f.pixels.size()) {
      pclose(pipe_);
      pipe_ = nullptr;
      if (next_index_ == 0 && got == 0) {
        throw UnreadableSource("decoder produced no frames for " + source_.string());
      }
      if (next_index_ < expected_frames_) {
        truncated_ = true;
      }
      return std::nullopt;
    }
    ++next_index_;
    return f;
  }

 private:
  fs::path source_;
  FrameSpec spec_;
  VideoMeta meta_;
  FILE* pipe_ = nullptr;
  std::int64_t next_index_ = 0;
  std::int64_t expected_frames_ = 0;
  bool truncated_ = false;
};

// Re-streams the source and keeps only requested frames. Indices fetched in
// ascending order reuse one pass; a backwards seek reopens the stream.
class DecoderFetcher final : public FrameFetcher {
 public:
  DecoderFetcher(fs::path source, FrameSpec spec)
      : source_(std::move(source)), spec_(std::move(spec)) {}

  Frame fetch(std::int64_t index) override {
    if (!stream_ || index < cursor_) {
      stream_ = std::make_unique<DecoderStream>(source_, spec_);
      cursor_ = 0;
    }
    while (true) {
      auto f = stream_->next();
      if (!f) {
        throw UnreadableSource("frame " + std::to_string(index) +
                               " unavailable from " + source_.string());
      }
      ++cursor_;
      if (f->index == index) return std::move(*f);
    }
  }

 private:
  fs::path source_;
  FrameSpec spec_;
  std::unique_ptr<DecoderStream> stream_;
  std::int64_t cursor_ = 0;
};

}  // namespace

std::unique_ptr<FrameStream> open_stream(const fs::path& source, const FrameSpec& spec) {
  if (!fs::exists(source)) {
    throw UnreadableSource("no such source: " + source.string());
  }
  if (is_raw_sequence(source)) {
    return std::make_unique<RawSequenceStream>(source);
  }
  if (fs::is_directory(source)) {
    throw UnreadableSource("directory without meta.json: " + source.string());
  }
  return std::make_unique<DecoderStream>(source, spec);
}

std::unique_ptr<FrameFetcher> open_fetcher(const fs::path& source, const FrameSpec& spec) {
  if (is_raw_sequence(source)) {
    return std::make_unique<RawSequenceFetcher>(source);
  }
  return std::make_unique<DecoderFetcher>(source, spec);
}

void write_raw_sequence(const fs::path& dir, const FrameSpec& spec,
                        const std::vector<std::vector<std::uint8_t>>& frames) {
  spec.validate();
  if (frames.empty()) {
    throw std::invalid_argument("raw sequence needs at least one frame");
  }
  fs::create_directories(dir);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].size() != spec.frame_bytes()) {
      throw std::invalid_argument("frame " + std::to_string(i) + " has wrong size");
    }
    std::ofstream out(dir / frame_filename(static_cast<std::int64_t>(i)),
                      std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(frames[i].data()),
              static_cast<std::streamsize>(frames[i].size()));
    if (!out) {
      throw std::runtime_error("failed writing frame file in " + dir.string());
    }
  }
  nlohmann::ordered_json meta;
  meta["width"] = spec.width;
  meta["height"] = spec.height;
  meta["sampling_fps"] = spec.sampling_fps;
  meta["frame_count"] = frames.size();
  std::ofstream out(dir / "meta.json", std::ios::trunc);
  out << meta.dump(2) << "\n";
  if (!out) {
    throw std::runtime_error("failed writing meta.json in " + dir.string());
  }
}

std::vector<std::int64_t> generate_synthetic(const fs::path& dir,
                                             const std::vector<SyntheticBlock>& blocks,
                                             const FrameSpec& spec) {
  spec.validate();
  if (blocks.empty()) {
    throw std::invalid_argument("need at least one block");
  }
  std::vector<std::vector<std::uint8_t>> frames;
  std::vector<std::int64_t> cuts;
  double elapsed = 0.0;
  std::int64_t written = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& block = blocks[b];
    if (!(block.duration_sec > 0)) {
      throw std::invalid_argument("block duration must be positive");
    }
    elapsed += block.duration_sec;
    // Block boundaries land on round(cumulative duration * fps) so rounding
    // never drifts across many blocks.
    const auto end_frame = std::llround(elapsed * spec.sampling_fps);

    std::vector<std::uint8_t> pixels(spec.frame_bytes());
    if (block.rgb) {
      for (std::size_t i = 0; i < pixels.size(); i += 3) {
        pixels[i] = (*block.rgb)[0];
        pixels[i + 1] = (*block.rgb)[1];
        pixels[i + 2] = (*block.rgb)[2];
      }
    } else {
      std::mt19937_64 rng(block.noise_seed);
      for (auto& px : pixels) {
        px = static_cast<std::uint8_t>(rng() & 0xff);
      }
    }
    while (written < end_frame) {
      frames.push_back(pixels);
      ++written;
    }
    if (b + 1 < blocks.size()) {
      cuts.push_back(written);
    }
  }
  if (frames.empty()) {
    frames.emplace_back(spec.frame_bytes(), std::uint8_t{0});
  }
  write_raw_sequence(dir, spec, frames);
  return cuts;
}

}  // namespace vseg
