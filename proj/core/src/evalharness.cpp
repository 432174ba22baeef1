#include "vseg/evalharness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;

namespace vseg {

std::vector<ManifestEntry> load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open manifest: " + path.string());
  }
  std::vector<ManifestEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    ManifestEntry e;
    if (tab == std::string::npos) {
      e.source = line;
      e.category = "default";
    } else {
      e.source = line.substr(0, tab);
      e.category = line.substr(tab + 1);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

CorpusReport evaluate_corpus(const std::vector<ManifestEntry>& manifest,
                             const RunOptions& options, int parallelism) {
  std::vector<fs::path> sources;
  sources.reserve(manifest.size());
  for (const auto& e : manifest) sources.push_back(e.source);

  RunOptions opts = options;
  opts.write_thumbnails = false;
  const auto batch = run_batch(sources, parallelism, opts);

  CorpusReport report;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (!batch[i].ok()) {
      report.errors.push_back(manifest[i].source.string() + ": " + batch[i].error());
      continue;
    }
    const auto& r = batch[i].result();
    CorpusRow row;
    row.source = manifest[i].source.string();
    row.category = manifest[i].category;
    row.duration_sec = r.video.duration_sec;
    row.scene_count = static_cast<int>(r.scenes.size());
    row.avg_scene_len_sec =
        row.scene_count > 0 ? row.duration_sec / row.scene_count : 0.0;
    row.scenes_per_minute = row.scene_count / (row.duration_sec / 60.0);
    row.keyframe_coverage_pct = r.diagnostics.keyframe_coverage * 100.0;
    report.rows.push_back(std::move(row));
  }

  std::map<std::string, std::vector<const CorpusRow*>> by_category;
  for (const auto& row : report.rows) by_category[row.category].push_back(&row);
  for (const auto& [category, rows] : by_category) {
    CategoryAggregate agg;
    agg.category = category;
    agg.video_count = static_cast<int>(rows.size());
    for (const auto* row : rows) {
      agg.avg_duration_sec += row->duration_sec;
      agg.avg_scene_len_sec += row->avg_scene_len_sec;
      agg.scenes_per_minute += row->scenes_per_minute;
      agg.keyframe_coverage_pct += row->keyframe_coverage_pct;
    }
    const double n = static_cast<double>(rows.size());
    agg.avg_duration_sec /= n;
    agg.avg_scene_len_sec /= n;
    agg.scenes_per_minute /= n;
    agg.keyframe_coverage_pct /= n;
    report.aggregates.push_back(std::move(agg));
  }
  return report;
}

std::string corpus_report_csv(const CorpusReport& report) {
  std::ostringstream out;
  out << "Source,Category,Duration (sec),Scene Count,Avg. Scene Length (sec),"
         "Scenes per Minute,Keyframe Coverage (%)\n";
  for (const auto& r : report.rows) {
    out << r.source << "," << r.category << "," << r.duration_sec << ","
        << r.scene_count << "," << r.avg_scene_len_sec << "," << r.scenes_per_minute
        << "," << r.keyframe_coverage_pct << "\n";
  }
  out << "\nCategory,Avg. Duration (min),Avg. Scene Length (sec),Scenes per Minute,"
         "Keyframe Coverage (%)\n";
  for (const auto& a : report.aggregates) {
    out << a.category << "," << a.avg_duration_sec / 60.0 << ","
        << a.avg_scene_len_sec << "," << a.scenes_per_minute << ","
        << a.keyframe_coverage_pct << "\n";
  }
  return out.str();
}

namespace {

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::vector<AblationRow> ablate(AblationParam param, const std::vector<double>& values,
                                const std::vector<ManifestEntry>& corpus,
                                const RunOptions& fixed, int parallelism) {
  if (values.empty()) {
    throw std::invalid_argument("ablation needs at least one value");
  }
  std::vector<fs::path> sources;
  for (const auto& e : corpus) sources.push_back(e.source);

  std::vector<AblationRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    RunOptions opts = fixed;
    opts.write_thumbnails = false;
    if (param == AblationParam::kMinlen) {
      opts.minlen_sec = value;
    } else {
      opts.threshold = value;
    }
    const auto batch = run_batch(sources, parallelism, opts);

    AblationRow row;
    row.param_value = value;
    std::vector<double> pooled_durations;
    double coverage_sum = 0.0;
    int ok = 0;
    for (const auto& entry : batch) {
      if (!entry.ok()) continue;
      const auto& r = entry.result();
      row.segments_per_video += static_cast<double>(r.scenes.size());
      coverage_sum += r.diagnostics.keyframe_coverage * 100.0;
      for (const auto& scene : r.scenes) {
        pooled_durations.push_back(scene.duration_sec());
      }
      ++ok;
    }
    if (ok > 0) {
      row.segments_per_video /= ok;
      row.keyframe_coverage_pct = coverage_sum / ok;
    }
    row.median_duration_sec = median(std::move(pooled_durations));
    rows.push_back(row);
  }
  return rows;
}

std::string ablation_csv(AblationParam param, const std::vector<AblationRow>& rows) {
  std::ostringstream out;
  out << (param == AblationParam::kMinlen ? "minlen (sec)" : "Threshold Value")
      << ",Segments per Video,Median Duration (sec),Keyframe Coverage (%)\n";
  for (const auto& r : rows) {
    out << r.param_value << "," << r.segments_per_video << ","
        << r.median_duration_sec << "," << r.keyframe_coverage_pct << "\n";
  }
  return out.str();
}

Prf boundary_prf(const std::vector<Scene>& detected, const GroundTruth& truth,
                 std::int64_t tolerance) {
  if (tolerance < 0) {
    throw std::invalid_argument("tolerance must be >= 0");
  }
  std::vector<std::int64_t> cuts;
  for (std::size_t i = 1; i < detected.size(); ++i) {
    cuts.push_back(detected[i].start_frame);
  }
  // Both lists are sorted; two-pointer first-fit gives a maximum one-to-one
  // matching under a +/- tolerance band.
  std::size_t i = 0, j = 0, matched = 0;
  while (i < cuts.size() && j < truth.cuts.size()) {
    const std::int64_t d = cuts[i] - truth.cuts[j];
    if (std::abs(d) <= tolerance) {
      ++matched;
      ++i;
      ++j;
    } else if (d < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  Prf prf;
  prf.precision = cuts.empty() ? 1.0 : static_cast<double>(matched) / cuts.size();
  prf.recall = truth.cuts.empty() ? 1.0 : static_cast<double>(matched) / truth.cuts.size();
  prf.f1 = prf.precision + prf.recall > 0
               ? 2.0 * prf.precision * prf.recall / (prf.precision + prf.recall)
               : 0.0;
  return prf;
}

}  // namespace vseg
