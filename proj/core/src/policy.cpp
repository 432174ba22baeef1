#include "vseg/policy.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vseg {

namespace {
using nlohmann::ordered_json;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kAdaptive: return "adaptive";
    case Strategy::kFallback: return "fallback";
    case Strategy::kContent: return "content";
    case Strategy::kRegularSplit: return "regular_split";
  }
  return "unknown";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "adaptive") return Strategy::kAdaptive;
  if (name == "fallback") return Strategy::kFallback;
  if (name == "content") return Strategy::kContent;
  if (name == "regular_split" || name == "regular") return Strategy::kRegularSplit;
  throw PolicyError("unknown strategy: " + name);
}

void PolicyTable::validate() const {
  if (rows.empty()) {
    throw MissingUnboundedRow("policy table is empty");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double d = rows[i].max_duration_sec;
    if (i > 0 && !(d > prev)) {
      throw NonMonotoneDurations("max_duration values must strictly increase");
    }
    prev = d;
    if (rows[i].strategy == Strategy::kFallback && !rows[i].content_params) {
      throw PolicyError("fallback row needs a content parameter set");
    }
  }
  if (std::isfinite(rows.back().max_duration_sec)) {
    throw MissingUnboundedRow("last policy row must be unbounded");
  }
}

PolicySpec resolve(double duration_sec, const PolicyTable& table) {
  table.validate();
  double prev = 0.0;
  for (const auto& row : table.rows) {
    if (duration_sec <= row.max_duration_sec) {
      PolicySpec spec;
      spec.strategy = row.strategy;
      spec.params = row.params;
      spec.content_params = row.content_params;
      std::ostringstream rule;
      if (std::isfinite(row.max_duration_sec)) {
        rule << "<=" << row.max_duration_sec << "s";
      } else {
        rule << ">" << prev << "s";
      }
      spec.matched_rule = rule.str();
      return spec;
    }
    prev = row.max_duration_sec;
  }
  throw PolicyError("no policy row matched");  // unreachable after validate()
}

PolicyTable default_table() {
  PolicyTable table;
  const double kMinlen = 15.0;

  PolicyRow shortClips;
  shortClips.max_duration_sec = 120.0;
  shortClips.strategy = Strategy::kAdaptive;
  shortClips.params.threshold = 1.0;
  shortClips.params.minlen_sec = kMinlen;

  PolicyRow episodes;
  episodes.max_duration_sec = 1800.0;
  episodes.strategy = Strategy::kAdaptive;
  episodes.params.threshold = 1.2;
  episodes.params.minlen_sec = kMinlen;

  PolicyRow films;
  films.max_duration_sec = 7200.0;
  films.strategy = Strategy::kFallback;
  films.params.threshold = 1.4;
  films.params.minlen_sec = kMinlen;
  DetectorParams filmContent;
  filmContent.threshold = 15.0;
  filmContent.minlen_sec = kMinlen;
  films.content_params = filmContent;

  PolicyRow extended;
  extended.max_duration_sec = 10800.0;
  extended.strategy = Strategy::kContent;
  extended.params.threshold = 12.0;
  extended.params.minlen_sec = kMinlen;

  PolicyRow ultraLong;
  ultraLong.max_duration_sec = std::numeric_limits<double>::infinity();
  ultraLong.strategy = Strategy::kRegularSplit;
  ultraLong.params.interval_sec = 30.0;

  table.rows = {shortClips, episodes, films, extended, ultraLong};
  return table;
}

namespace {

ordered_json params_to_json(const DetectorParams& p) {
  ordered_json j;
  j["threshold"] = p.threshold;
  j["minlen_sec"] = p.minlen_sec;
  j["smoothing_window"] = p.smoothing_window;
  j["adaptive_window"] = p.adaptive_window;
  j["interval_sec"] = p.interval_sec;
  j["fallback_min_scenes"] = p.fallback_min_scenes;
  j["content_floor"] = p.content_floor;
  return j;
}

DetectorParams params_from_json(const nlohmann::json& j) {
  DetectorParams p;
  p.threshold = j.value("threshold", p.threshold);
  p.minlen_sec = j.value("minlen_sec", p.minlen_sec);
  p.smoothing_window = j.value("smoothing_window", p.smoothing_window);
  p.adaptive_window = j.value("adaptive_window", p.adaptive_window);
  p.interval_sec = j.value("interval_sec", p.interval_sec);
  p.fallback_min_scenes = j.value("fallback_min_scenes", p.fallback_min_scenes);
  p.content_floor = j.value("content_floor", p.content_floor);
  if (p.threshold < 0 || p.minlen_sec < 0 || !(p.interval_sec > 0) ||
      p.fallback_min_scenes < 1) {
    throw PolicyError("invalid detector parameters in policy config");
  }
  return p;
}

}  // namespace

std::string serialize_table(const PolicyTable& table) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json j;
    if (std::isfinite(row.max_duration_sec)) {
      j["max_duration_sec"] = row.max_duration_sec;
    } else {
      j["max_duration_sec"] = nullptr;  // unbounded
    }
    j["strategy"] = to_string(row.strategy);
    j["params"] = params_to_json(row.params);
    if (row.content_params) {
      j["content_params"] = params_to_json(*row.content_params);
    }
    rows.push_back(j);
  }
  ordered_json root;
  root["rows"] = rows;
  return root.dump(2) + "\n";
}

PolicyTable parse_table(const std::string& json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw PolicyError(std::string("policy config parse error: ") + e.what());
  }
  PolicyTable table;
  try {
    for (const auto& j : root.at("rows")) {
      PolicyRow row;
      if (j.contains("max_duration_sec") && !j["max_duration_sec"].is_null()) {
        row.max_duration_sec = j["max_duration_sec"].get<double>();
      } else {
        row.max_duration_sec = std::numeric_limits<double>::infinity();
      }
      row.strategy = strategy_from_string(j.at("strategy").get<std::string>());
      if (j.contains("params")) row.params = params_from_json(j["params"]);
      if (j.contains("content_params")) {
        row.content_params = params_from_json(j["content_params"]);
      }
      table.rows.push_back(row);
    }
  } catch (const nlohmann::json::exception& e) {
    throw PolicyError(std::string("policy config parse error: ") + e.what());
  }
  table.validate();
  return table;
}

PolicyTable load_table(const std::filesystem::path& config) {
  std::ifstream in(config);
  if (!in) {
    throw PolicyError("cannot open policy config: " + config.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str());
}

}  // namespace vseg
