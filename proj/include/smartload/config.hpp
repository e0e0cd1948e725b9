#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "smartload/csv.hpp"
#include "smartload/error.hpp"
#include "smartload/featurize.hpp"
#include "smartload/forest.hpp"
#include "smartload/impute.hpp"
#include "smartload/metrics.hpp"
#include "smartload/model_json.hpp"
#include "smartload/tuning.hpp"

namespace smartload {

/// Flat "section.key" -> raw value view of a TOML-like file:
///
///     [features]
///     lags = [1, 2]     # comment
///     transform = "none"
class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in) {
    ConfigFile cfg;
    std::string line, section;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      line = csv::trim(strip_comment(line));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw Error(ErrorKind::MalformedConfig, "line " + std::to_string(line_number));
        section = csv::trim(line.substr(1, line.size() - 2));
        continue;
      }
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorKind::MalformedConfig, "line " + std::to_string(line_number) + ": expected key = value");
      }
      auto key = csv::trim(line.substr(0, eq));
      if (key.empty()) throw Error(ErrorKind::MalformedConfig, "line " + std::to_string(line_number) + ": empty key");
      cfg.values_[section.empty() ? key : section + "." + key] = csv::trim(line.substr(eq + 1));
    }
    return cfg;
  }

  static ConfigFile load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
    return parse(in);
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::optional<std::string> get_string(const std::string& key) const {
    auto raw = lookup(key);
    if (!raw) return std::nullopt;
    if (raw->size() >= 2 && raw->front() == '"' && raw->back() == '"') return raw->substr(1, raw->size() - 2);
    return raw;
  }

  std::optional<double> get_double(const std::string& key) const {
    auto raw = lookup(key);
    if (!raw) return std::nullopt;
    auto v = csv::parse_number(*raw);
    if (!v) throw Error(ErrorKind::MalformedConfig, key + " is not a number");
    return v;
  }

  std::optional<std::int64_t> get_int(const std::string& key) const {
    auto v = get_double(key);
    if (!v) return std::nullopt;
    if (*v != std::floor(*v)) throw Error(ErrorKind::MalformedConfig, key + " must be an integer");
    return static_cast<std::int64_t>(*v);
  }

  std::optional<std::uint64_t> get_uint64(const std::string& key) const {
    auto raw = lookup(key);
    if (!raw) return std::nullopt;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), v);
    if (ec != std::errc{} || ptr != raw->data() + raw->size()) {
      throw Error(ErrorKind::MalformedConfig, key + " must be an unsigned 64-bit integer");
    }
    return v;
  }

  std::optional<bool> get_bool(const std::string& key) const {
    auto raw = lookup(key);
    if (!raw) return std::nullopt;
    auto v = csv::lower(*raw);
    if (v == "true") return true;
    if (v == "false") return false;
    throw Error(ErrorKind::MalformedConfig, key + " must be true or false");
  }

  std::optional<std::vector<double>> get_list(const std::string& key) const {
    auto raw = lookup(key);
    if (!raw) return std::nullopt;
    if (raw->size() < 2 || raw->front() != '[' || raw->back() != ']') {
      throw Error(ErrorKind::MalformedConfig, key + " must be a [list]");
    }
    std::vector<double> out;
    auto body = raw->substr(1, raw->size() - 2);
    if (csv::trim(body).empty()) return out;
    for (const auto& item : csv::split_line(body)) {
      auto v = csv::parse_number(item);
      if (!v) throw Error(ErrorKind::MalformedConfig, key + " has a non-numeric element");
      out.push_back(*v);
    }
    return out;
  }

  /// Keys present in the file but never looked up.
  std::vector<std::string> unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) {
      if (!used_.count(k)) out.push_back(k);
    }
    return out;
  }

 private:
  static std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
  }

  std::optional<std::string> lookup(const std::string& key) const {
    used_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

/// Everything one pipeline run needs. Defaults reproduce the final feature set
/// (slot, holiday, weekday, weekend, previous-day min/max, lags 1 and 2).
struct PipelineConfig {
  std::string meter_csv;
  std::string holiday_csv;
  ImputeOptions impute;
  FeatureSpec features;
  std::size_t acf_max_lag = 48;
  std::size_t acf_top_k = 10;
  HyperParams model;
  ForestParams forest;
  bool stack_out_of_fold = false;
  ParamSpace space;
  int split_year = 2013;
  SelectionMetric metric = SelectionMetric::mae;
  std::size_t m = 5;
  Resampling resampling;
  std::optional<std::uint64_t> seed;
  NrmseNormalizer nrmse_normalizer = NrmseNormalizer::mean;
  std::string output_dir = "out";

  /// Canonical JSON of every setting; hashed into output provenance.
  Json to_json() const {
    Json j;
    j["input"] = {{"meter_csv", meter_csv}, {"holiday_csv", holiday_csv}};
    j["impute"] = {{"short_gap_threshold", impute.short_gap_threshold}};
    j["features"] = smartload::to_json(features);
    j["features"]["acf_max_lag"] = acf_max_lag;
    j["features"]["acf_top_k"] = acf_top_k;
    j["model"] = smartload::to_json(model);
    j["forest"] = smartload::to_json(forest);
    j["stack"] = {{"out_of_fold", stack_out_of_fold}};
    j["tuning"] = {{"split_year", split_year},
                   {"metric", to_string(metric)},
                   {"m", m},
                   {"resampling_iterations", resampling.iterations},
                   {"holdout_fraction", resampling.holdout_fraction ? Json(*resampling.holdout_fraction) : Json()},
                   {"num_leaves", {space.num_leaves.lower, space.num_leaves.upper}},
                   {"min_leaf_instances", {space.min_leaf_instances.lower, space.min_leaf_instances.upper}},
                   {"learning_rate", {space.learning_rate.lower, space.learning_rate.upper}},
                   {"num_trees", {space.num_trees.lower, space.num_trees.upper}}};
    j["evaluate"] = {{"nrmse_normalizer", to_string(nrmse_normalizer)}};
    j["run"] = {{"seed", seed ? Json(*seed) : Json()}, {"output_dir", output_dir}};
    return j;
  }

  /// FNV-1a 64 of the canonical JSON, as 16 hex digits. The output directory is
  /// left out so identical runs written to different places hash alike.
  std::string hash() const {
    auto j = to_json();
    j["run"].erase("output_dir");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump()) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

namespace detail {

template <typename T>
Range<T> range_from(const ConfigFile& f, const std::string& key, Range<T> fallback) {
  auto list = f.get_list(key);
  if (!list) return fallback;
  if (list->size() != 2) throw Error(ErrorKind::MalformedConfig, key + " must be [lower, upper]");
  return {static_cast<T>((*list)[0]), static_cast<T>((*list)[1])};
}

}  // namespace detail

inline PipelineConfig config_from_file(const ConfigFile& f) {
  PipelineConfig c;
  if (auto v = f.get_string("input.meter_csv")) c.meter_csv = *v;
  if (auto v = f.get_string("input.holiday_csv")) c.holiday_csv = *v;
  if (auto v = f.get_int("impute.short_gap_threshold")) c.impute.short_gap_threshold = static_cast<std::size_t>(*v);

  if (auto v = f.get_list("features.lags")) c.features.lags.assign(v->begin(), v->end());
  if (auto v = f.get_bool("features.prev_day_min_max")) c.features.include_prev_day_min_max = *v;
  if (auto v = f.get_bool("features.week_lag")) c.features.include_week_lag = *v;
  if (auto v = f.get_list("features.time_part_boundaries")) {
    if (v->size() != 4) throw Error(ErrorKind::MalformedConfig, "time_part_boundaries needs 4 entries");
    for (std::size_t i = 0; i < 4; ++i) c.features.time_part_boundaries[i] = static_cast<int>((*v)[i]);
  }
  if (auto v = f.get_string("features.transform")) c.features.transform = parse_transform(*v);
  if (auto v = f.get_double("features.scale_factor")) c.features.scale_factor = *v;
  if (auto v = f.get_int("features.acf_max_lag")) c.acf_max_lag = static_cast<std::size_t>(*v);
  if (auto v = f.get_int("features.acf_top_k")) c.acf_top_k = static_cast<std::size_t>(*v);

  if (auto v = f.get_int("model.num_leaves")) c.model.num_leaves = static_cast<int>(*v);
  if (auto v = f.get_int("model.min_leaf_instances")) c.model.min_leaf_instances = static_cast<int>(*v);
  if (auto v = f.get_double("model.learning_rate")) c.model.learning_rate = *v;
  if (auto v = f.get_int("model.num_trees")) c.model.num_trees = static_cast<int>(*v);

  if (auto v = f.get_int("forest.tree_count")) c.forest.tree_count = static_cast<int>(*v);
  if (auto v = f.get_int("forest.num_leaves")) c.forest.num_leaves = static_cast<int>(*v);
  if (auto v = f.get_int("forest.min_leaf_instances")) c.forest.min_leaf_instances = static_cast<int>(*v);
  if (auto v = f.get_bool("forest.bootstrap")) c.forest.bootstrap = *v;
  if (auto v = f.get_bool("stack.out_of_fold")) c.stack_out_of_fold = *v;

  if (auto v = f.get_int("tuning.split_year")) c.split_year = static_cast<int>(*v);
  if (auto v = f.get_string("tuning.metric")) c.metric = parse_selection_metric(*v);
  if (auto v = f.get_int("tuning.m")) c.m = static_cast<std::size_t>(*v);
  if (auto v = f.get_int("tuning.resampling_iterations")) c.resampling.iterations = static_cast<std::size_t>(*v);
  if (auto v = f.get_double("tuning.holdout_fraction")) c.resampling.holdout_fraction = *v;
  c.space.num_leaves = detail::range_from(f, "tuning.num_leaves", c.space.num_leaves);
  c.space.min_leaf_instances = detail::range_from(f, "tuning.min_leaf_instances", c.space.min_leaf_instances);
  c.space.learning_rate = detail::range_from(f, "tuning.learning_rate", c.space.learning_rate);
  c.space.num_trees = detail::range_from(f, "tuning.num_trees", c.space.num_trees);

  if (auto v = f.get_string("evaluate.nrmse_normalizer")) c.nrmse_normalizer = parse_nrmse_normalizer(*v);
  if (auto v = f.get_uint64("run.seed")) c.seed = *v;
  if (auto v = f.get_string("run.output_dir")) c.output_dir = *v;

  if (auto unused = f.unused_keys(); !unused.empty()) {
    throw Error(ErrorKind::MalformedConfig, "unknown key '" + unused.front() + "'");
  }
  return c;
}

}  // namespace smartload
