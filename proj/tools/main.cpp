// Command-line front end: segment videos, evaluate a corpus manifest, or
// run parameter ablation sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vseg/evalharness.hpp"
#include "vseg/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
  double fps = 2.0;
  std::string size = "256x144";
  std::string strategy = "auto";
  double threshold = -1.0;
  double minlen = -1.0;
  double interval = -1.0;
  std::string weights = "0.7,0.3";
  int candidates = 5;
  std::string policy_file;
  int jobs = 1;
  bool no_thumbs = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--fps", args.fps, "Sampling rate in frames per second");
  cmd->add_option("--size", args.size, "Frame size as WxH");
  cmd->add_option("--strategy", args.strategy,
                  "auto|adaptive|content|fallback|regular")
      ->check(CLI::IsMember({"auto", "adaptive", "content", "fallback", "regular"}));
  cmd->add_option("--threshold", args.threshold, "Detector threshold override");
  cmd->add_option("--minlen", args.minlen, "Minimum scene length in seconds");
  cmd->add_option("--interval", args.interval, "Regular-split interval in seconds");
  cmd->add_option("--weights", args.weights, "Keyframe weights as SHARP,BRIGHT");
  cmd->add_option("--candidates", args.candidates, "Keyframe candidates per scene");
  cmd->add_option("--policy", args.policy_file, "Policy table config (JSON)");
  cmd->add_option("--jobs", args.jobs, "Parallel worker count")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--no-thumbs", args.no_thumbs, "Skip thumbnail export");
}

vseg::RunOptions build_options(const CommonArgs& args) {
  vseg::RunOptions options;
  options.spec.sampling_fps = args.fps;
  if (std::sscanf(args.size.c_str(), "%dx%d", &options.spec.width,
                  &options.spec.height) != 2) {
    throw CLI::ValidationError("--size", "expected WxH, e.g. 256x144");
  }
  if (std::sscanf(args.weights.c_str(), "%lf,%lf", &options.weights.w_sharp,
                  &options.weights.w_bright) != 2 ||
      options.weights.w_sharp < 0 || options.weights.w_bright < 0 ||
      options.weights.w_sharp + options.weights.w_bright <= 0) {
    throw CLI::ValidationError("--weights", "expected SHARP,BRIGHT with a positive sum");
  }
  if (args.candidates < 1) {
    throw CLI::ValidationError("--candidates", "must be >= 1");
  }
  options.weights.n_candidates = args.candidates;
  if (args.strategy != "auto") {
    options.strategy = vseg::strategy_from_string(args.strategy);
  }
  if (args.threshold >= 0) options.threshold = args.threshold;
  if (args.minlen >= 0) options.minlen_sec = args.minlen;
  if (args.interval > 0) options.interval_sec = args.interval;
  if (!args.policy_file.empty()) {
    options.policy = vseg::load_table(args.policy_file);
  }
  options.write_thumbnails = !args.no_thumbs;
  return options;
}

int cmd_segment(const std::vector<std::string>& inputs, const std::string& out_dir,
                const CommonArgs& args) {
  const auto options = build_options(args);
  std::vector<fs::path> sources(inputs.begin(), inputs.end());
  const auto batch = vseg::run_batch(sources, args.jobs, options);

  int failures = 0;
  for (const auto& entry : batch) {
    if (!entry.ok()) {
      ++failures;
      std::cerr << entry.source.string() << ": FAILED: " << entry.error() << "\n";
      continue;
    }
    const auto& r = entry.result();
    fs::path dir = out_dir;
    if (batch.size() > 1) {
      dir /= entry.source.stem().empty() ? entry.source.filename() : entry.source.stem();
    }
    vseg::write_metadata(r, dir, options.write_thumbnails);
    std::cout << entry.source.string() << ": " << r.scenes.size() << " scenes, "
              << r.used_strategy << ", coverage "
              << r.diagnostics.keyframe_coverage * 100.0 << "%, "
              << r.timing.total_sec << "s\n";
  }
  if (failures == 0) return 0;
  return failures == static_cast<int>(batch.size()) && !batch.empty() ? 1 : 1;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

int cmd_evaluate(const std::string& manifest_path, const std::string& out_csv,
                 const CommonArgs& args) {
  const auto options = build_options(args);
  const auto manifest = vseg::load_manifest(manifest_path);
  const auto report = vseg::evaluate_corpus(manifest, options, args.jobs);
  write_text(out_csv, vseg::corpus_report_csv(report));
  for (const auto& err : report.errors) std::cerr << err << "\n";
  return report.errors.empty() ? 0 : 1;
}

int cmd_ablate(const std::string& manifest_path, const std::string& param_name,
               const std::vector<double>& values, const std::string& out_csv,
               const CommonArgs& args) {
  const auto options = build_options(args);
  const auto manifest = vseg::load_manifest(manifest_path);
  const auto param = param_name == "minlen" ? vseg::AblationParam::kMinlen
                                            : vseg::AblationParam::kThreshold;
  const auto rows = vseg::ablate(param, values, manifest, options, args.jobs);
  write_text(out_csv, vseg::ablation_csv(param, rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Duration-aware video scene segmentation and keyframe extraction"};
  app.require_subcommand(1);

  CommonArgs args;

  auto* segment = app.add_subcommand("segment", "Segment videos and extract keyframes");
  std::vector<std::string> inputs;
  std::string out_dir;
  segment->add_option("input", inputs, "Video files or raw-frame directories")
      ->required();
  segment->add_option("--out", out_dir, "Output directory")->required();
  add_common_options(segment, args);

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a corpus manifest");
  std::string manifest_path, out_csv;
  evaluate->add_option("--manifest", manifest_path, "path<TAB>category per line")
      ->required();
  evaluate->add_option("--out", out_csv, "Report CSV path (- for stdout)");
  add_common_options(evaluate, args);

  auto* ablate = app.add_subcommand("ablate", "Sweep minlen or threshold over a corpus");
  std::string param_name;
  std::vector<double> values;
  ablate->add_option("--manifest", manifest_path, "path<TAB>category per line")
      ->required();
  ablate->add_option("--param", param_name, "minlen|threshold")
      ->required()
      ->check(CLI::IsMember({"minlen", "threshold"}));
  ablate->add_option("--values", values, "Parameter values to sweep")->required();
  ablate->add_option("--out", out_csv, "Series CSV path (- for stdout)");
  add_common_options(ablate, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (segment->parsed()) return cmd_segment(inputs, out_dir, args);
    if (evaluate->parsed()) return cmd_evaluate(manifest_path, out_csv, args);
    if (ablate->parsed()) return cmd_ablate(manifest_path, param_name, values, out_csv, args);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
