#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vseg/detectors.hpp"

namespace vseg {

struct PolicyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonMonotoneDurations : PolicyError {
  using PolicyError::PolicyError;
};
struct MissingUnboundedRow : PolicyError {
  using PolicyError::PolicyError;
};

enum class Strategy { kAdaptive, kFallback, kContent, kRegularSplit };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

struct PolicyRow {
  double max_duration_sec = std::numeric_limits<double>::infinity();
  Strategy strategy = Strategy::kAdaptive;
  DetectorParams params;
  // Fallback rows carry a second parameter set for the content pass.
  std::optional<DetectorParams> content_params;
};

/// Ordered duration-to-strategy table. max_duration values strictly
/// increase and the final row is unbounded.
struct PolicyTable {
  std::vector<PolicyRow> rows;
  void validate() const;
};

/// Resolved strategy for one video.
struct PolicySpec {
  Strategy strategy = Strategy::kAdaptive;
  DetectorParams params;
  std::optional<DetectorParams> content_params;
  std::string matched_rule;  // e.g. "<=1800s"
};

/// First row with duration_sec <= max_duration wins.
PolicySpec resolve(double duration_sec, const PolicyTable& table);

PolicyTable default_table();

/// JSON policy config, schema documented in the repo. Throws ParseError /
/// NonMonotoneDurations / MissingUnboundedRow.
PolicyTable load_table(const std::filesystem::path& config);
PolicyTable parse_table(const std::string& json_text);
std::string serialize_table(const PolicyTable& table);

}  // namespace vseg
