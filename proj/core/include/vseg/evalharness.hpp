#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vseg/pipeline.hpp"

namespace vseg {

struct ManifestEntry {
  std::filesystem::path source;
  std::string category;
};

/// One line per video: path<TAB>category.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

struct CorpusRow {
  std::string source;
  std::string category;
  double duration_sec = 0.0;
  int scene_count = 0;
  double avg_scene_len_sec = 0.0;
  double scenes_per_minute = 0.0;
  double keyframe_coverage_pct = 0.0;
};

struct CategoryAggregate {
  std::string category;
  int video_count = 0;
  double avg_duration_sec = 0.0;
  double avg_scene_len_sec = 0.0;
  double scenes_per_minute = 0.0;
  double keyframe_coverage_pct = 0.0;
};

struct CorpusReport {
  std::vector<CorpusRow> rows;
  std::vector<CategoryAggregate> aggregates;
  std::vector<std::string> errors;  // per-video failures, excluded from aggregates
};

CorpusReport evaluate_corpus(const std::vector<ManifestEntry>& manifest,
                             const RunOptions& options, int parallelism = 1);

std::string corpus_report_csv(const CorpusReport& report);

enum class AblationParam { kMinlen, kThreshold };

struct AblationRow {
  double param_value = 0.0;
  double segments_per_video = 0.0;   // mean over videos
  double median_duration_sec = 0.0;  // pooled scene durations
  double keyframe_coverage_pct = 0.0;
};

/// One full corpus run per parameter value, all other options fixed.
/// The coverage column reports keyframe coverage.
std::vector<AblationRow> ablate(AblationParam param, const std::vector<double>& values,
                                const std::vector<ManifestEntry>& corpus,
                                const RunOptions& fixed, int parallelism = 1);

std::string ablation_csv(AblationParam param, const std::vector<AblationRow>& rows);

struct GroundTruth {
  std::vector<std::int64_t> cuts;  // sorted, unique sampled-frame indices
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Greedy one-to-one matching of detected internal scene starts against
/// planted cuts within +/- tolerance frames. Empty detected yields
/// precision 1; empty truth yields recall 1.
Prf boundary_prf(const std::vector<Scene>& detected, const GroundTruth& truth,
                 std::int64_t tolerance);

}  // namespace vseg
