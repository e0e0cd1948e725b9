#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smartload/config.hpp"
#include "smartload/fixture.hpp"
#include "smartload/pipeline.hpp"
#include "smartload/synthetic.hpp"

namespace smartload::cli {

/// Bad flags or missing required inputs; exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// ---- tabular CSV with a header ---------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  }

  std::vector<double> numbers(std::size_t col) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto v = col < rows[r].size() ? csv::parse_number(rows[r][col]) : std::nullopt;
      if (!v) throw Error(ErrorKind::UnparseableValue, "row " + std::to_string(r + 2) + ", column '" + header[col] + "'");
      out.push_back(*v);
    }
    return out;
  }
};

inline Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  Table t;
  std::string line;
  std::size_t line_number = 0;
  if (!csv::next_record(in, line, line_number)) throw Error(ErrorKind::MalformedHeader, path.string() + " is empty");
  for (auto& h : csv::split_line(line)) t.header.push_back(csv::trim(h));
  while (csv::next_record(in, line, line_number)) t.rows.push_back(csv::split_line(line));
  return t;
}

/// First of `preferred` present in the header, else the last column.
inline std::size_t pick_column(const Table& t, const std::string& requested, std::vector<std::string> preferred) {
  if (!requested.empty()) {
    if (auto c = t.column(requested)) return *c;
    throw UsageError("column '" + requested + "' not found");
  }
  for (const auto& p : preferred) {
    if (auto c = t.column(p)) return *c;
  }
  if (t.header.empty()) throw Error(ErrorKind::MalformedHeader, "table has no columns");
  return t.header.size() - 1;
}

// ---- plot data ---------------------------------------------------------------

struct PlotRow {
  std::size_t period_index = 0;
  double actual_scaled = 0.0;
  double predicted_scaled = 0.0;
};

/// Rows whose timestamp falls in [window_start, window_start + days), values
/// multiplied by `scale`.
inline std::vector<PlotRow> emit_plot_data(const std::vector<SlotTime>& timestamps, std::span<const double> actual,
                                           std::span<const double> predicted, Date window_start, int days,
                                           double scale) {
  if (timestamps.size() != actual.size() || actual.size() != predicted.size()) {
    throw Error(ErrorKind::LengthMismatch, "plot inputs must be aligned");
  }
  const Date window_end = window_start + std::chrono::days{days};
  std::vector<PlotRow> out;
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    if (timestamps[i].date < window_start || timestamps[i].date >= window_end) continue;
    out.push_back({out.size(), scale * actual[i], scale * predicted[i]});
  }
  if (out.empty()) throw Error(ErrorKind::EmptyWindow, "no predictions between " + format_date(window_start) +
                                                           " and " + format_date(window_end));
  return out;
}

inline void write_plot_csv(std::ostream& out, const std::vector<PlotRow>& rows) {
  out << "period_index,actual_scaled,predicted_scaled\n";
  for (const auto& r : rows) {
    out << r.period_index << ',' << csv::format_number(r.actual_scaled) << ','
        << csv::format_number(r.predicted_scaled) << '\n';
  }
}

inline std::optional<SlotTime> parse_slot_time(const std::string& text) {
  // YYYY-MM-DDTHH:MM
  if (text.size() != 16 || text[10] != 'T' || text[13] != ':') return std::nullopt;
  auto date = parse_date(text.substr(0, 10));
  int h = 0, m = 0;
  if (!date || !detail::parse_int(std::string_view(text).substr(11, 2), h) ||
      !detail::parse_int(std::string_view(text).substr(14, 2), m) || h > 23 || (m != 0 && m != 30)) {
    return std::nullopt;
  }
  return SlotTime{*date, h * 2 + m / kSlotMinutes};
}

// ---- command plumbing ----------------------------------------------------------

struct Options {
  std::string config;
  std::string meter;
  std::string holidays;
  std::string out;
  std::uint64_t seed = 0;
  int split_year = 0;
  std::string metric;
  std::size_t m = 0;
  std::string model;
  std::string pred;
  std::string actual;
  std::string pred_column;
  std::string actual_column;
  std::string start;
  int days = 7;
  double scale = 0.0;
  bool all_rows = false;
  std::string fixture;
  std::string table2;
  int first_year = 2011;
  int years = 3;
  int synth_days = 0;
  int start_day = 0;
  double gap_fraction = 0.05;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
}

inline void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

class Runner {
 public:
  Runner(const Options& opt, const CLI::App& sub, std::ostream& out) : opt_(opt), sub_(sub), out_(out) {}

  PipelineConfig resolve() const {
    PipelineConfig cfg;
    if (!opt_.config.empty()) {
      const std::filesystem::path cfg_path(opt_.config);
      cfg = config_from_file(ConfigFile::load(cfg_path));
      // Input paths in a config file are relative to the file itself.
      auto rebase = [&](std::string& p) {
        if (!p.empty() && std::filesystem::path(p).is_relative()) p = (cfg_path.parent_path() / p).string();
      };
      rebase(cfg.meter_csv);
      rebase(cfg.holiday_csv);
    }
    if (given("--meter")) cfg.meter_csv = opt_.meter;
    if (given("--holidays")) cfg.holiday_csv = opt_.holidays;
    if (given("--out")) cfg.output_dir = opt_.out;
    if (given("--seed")) cfg.seed = opt_.seed;
    if (given("--split-year")) cfg.split_year = opt_.split_year;
    if (given("--metric")) cfg.metric = parse_selection_metric(opt_.metric);
    if (given("--m")) cfg.m = opt_.m;
    return cfg;
  }

  int run(const std::string& command) {
    cfg_ = resolve();
    std::filesystem::create_directories(cfg_.output_dir);
    if (command == "ingest") return ingest();
    if (command == "impute") return impute_cmd();
    if (command == "featurize") return featurize();
    if (command == "train") return train();
    if (command == "tune") return tune();
    if (command == "predict") return predict();
    if (command == "evaluate") return evaluate();
    if (command == "report") return report();
    if (command == "validate-fixture") return validate();
    if (command == "synth") return synth();
    throw UsageError("unknown command " + command);
  }

 private:
  bool given(const std::string& flag) const {
    try {
      return sub_.count(flag) > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  }

  std::filesystem::path out_path(const std::string& name) const {
    return std::filesystem::path(cfg_.output_dir) / name;
  }

  std::uint64_t require_seed() const {
    if (!cfg_.seed) throw UsageError("--seed is required for this command");
    return *cfg_.seed;
  }

  void require_meter() const {
    if (cfg_.meter_csv.empty()) throw UsageError("--meter (or input.meter_csv in --config) is required");
  }

  Json provenance(const std::string& command) const {
    return Json{{"command", command},
                {"config_hash", cfg_.hash()},
                {"seed", cfg_.seed ? Json(*cfg_.seed) : Json()}};
  }

  Json warnings_json(const WideCsv& wide) const {
    Json w = Json::array();
    for (const auto& x : wide.warnings) w.push_back({{"line", x.line}, {"message", x.message}});
    return w;
  }

  int ingest() {
    require_meter();
    auto data = prepare_data(cfg_, cfg_.features, Stage::ingest);
    std::ostringstream series;
    write_series_csv(series, data.raw);
    write_text(out_path("series.csv"), series.str());
    write_json(out_path("ingest_report.json"),
               Json{{"schema", "smartload.ingest_report"},
                    {"schema_version", 1},
                    {"provenance", provenance("ingest")},
                    {"records", data.wide.records.size()},
                    {"entries", data.raw.size()},
                    {"missing", data.raw.missing_count()},
                    {"first_date", format_date(data.raw.start)},
                    {"holidays", data.calendar.entries.size()},
                    {"warnings", warnings_json(data.wide)}});
    out_ << "ingest: " << data.raw.size() << " entries, " << data.raw.missing_count() << " missing, "
         << data.wide.warnings.size() << " warnings\n";
    return kExitOk;
  }

  int impute_cmd() {
    require_meter();
    auto data = prepare_data(cfg_, cfg_.features, Stage::impute);
    std::ostringstream series;
    write_series_csv(series, data.imputed.series);
    write_text(out_path("imputed_series.csv"), series.str());
    auto j = to_json(data.imputed.report);
    j["schema"] = "smartload.imputation_report";
    j["schema_version"] = 1;
    j["short_gap_threshold"] = cfg_.impute.short_gap_threshold;
    j["provenance"] = provenance("impute");
    write_json(out_path("imputation_report.json"), j);
    out_ << j.dump(2) << '\n';
    return kExitOk;
  }

  int featurize() {
    require_meter();
    auto data = prepare_data(cfg_, cfg_.features);
    std::ostringstream features;
    write_matrix_csv(features, data.matrix);
    write_text(out_path("features.csv"), features.str());
    Json acf_json;
    try {
      auto acf = autocorrelation(data.imputed.series, cfg_.acf_max_lag);
      acf_json = {{"max_lag", cfg_.acf_max_lag},
                  {"values", acf.values},
                  {"top_lags", select_lags(acf, cfg_.acf_top_k)}};
    } catch (const Error& e) {
      acf_json = {{"error", e.what()}};
    }
    write_json(out_path("featurize_report.json"), Json{{"schema", "smartload.featurize_report"},
                                                       {"schema_version", 1},
                                                       {"provenance", provenance("featurize")},
                                                       {"rows", data.matrix.rows()},
                                                       {"columns", data.matrix.column_names},
                                                       {"feature_spec", to_json(cfg_.features)},
                                                       {"autocorrelation", acf_json}});
    out_ << "featurize: " << data.matrix.rows() << " rows x " << data.matrix.cols() << " features\n";
    return kExitOk;
  }

  Json train_metrics(const ModelBundle& bundle, const FeatureMatrix& train) const {
    const auto p = predict_bundle(bundle, train);
    auto y = invert_transform(train.y, bundle.spec);
    auto metrics = [&](const std::vector<double>& pred) {
      return to_json(evaluate_metrics(y, invert_transform(pred, bundle.spec), cfg_.nrmse_normalizer));
    };
    return Json{{"gbdt", metrics(p.gbdt)}, {"forest", metrics(p.forest)}, {"stack", metrics(p.stack)}};
  }

  int train() {
    require_meter();
    const auto seed = require_seed();
    auto data = prepare_data(cfg_, cfg_.features);
    auto [train_m, test_m] = temporal_split(data.matrix, cfg_.split_year);
    auto bundle = assemble_bundle(train_m, fit_gbdt(train_m, cfg_.model), cfg_.forest, seed, cfg_.features,
                                  cfg_.split_year, cfg_.stack_out_of_fold);
    auto j = to_json(bundle);
    j["provenance"] = provenance("train");
    write_json(out_path("model.json"), j);
    write_json(out_path("train_report.json"), Json{{"schema", "smartload.train_report"},
                                                   {"schema_version", 1},
                                                   {"provenance", provenance("train")},
                                                   {"train_rows", train_m.rows()},
                                                   {"test_rows", test_m.rows()},
                                                   {"training_metrics", train_metrics(bundle, train_m)}});
    out_ << "train: " << bundle.gbdt.trees.size() << " boosted trees, " << bundle.forest.trees.size()
         << " forest trees\n";
    return kExitOk;
  }

  int tune() {
    require_meter();
    const auto seed = require_seed();
    auto data = prepare_data(cfg_, cfg_.features);
    auto [train_m, test_m] = temporal_split(data.matrix, cfg_.split_year);
    TuningOptions options;
    options.space = cfg_.space;
    options.m = cfg_.m;
    options.resampling = cfg_.resampling;
    options.metric = cfg_.metric;
    options.seed = seed;
    auto result = random_search(train_m, options);

    auto j = to_json(result);
    j["schema"] = "smartload.tuning_result";
    j["schema_version"] = 1;
    j["provenance"] = provenance("tune");
    j["train_rows"] = train_m.rows();
    j["resampling"] = {{"iterations", cfg_.resampling.iterations},
                       {"holdout_fraction",
                        cfg_.resampling.holdout_fraction ? Json(*cfg_.resampling.holdout_fraction) : Json()}};
    j["final_model_file"] = "model.json";
    write_json(out_path("tuning_result.json"), j);

    auto bundle = assemble_bundle(train_m, std::move(result.final_model), cfg_.forest, seed, cfg_.features,
                                  cfg_.split_year, cfg_.stack_out_of_fold);
    auto mj = to_json(bundle);
    mj["provenance"] = provenance("tune");
    write_json(out_path("model.json"), mj);
    const auto& best = result.candidates[result.best_index];
    out_ << "tune: " << result.candidates.size() << " candidates, best #" << result.best_index << " (leaves "
         << best.params.num_leaves << ", min leaf " << best.params.min_leaf_instances << ", rate "
         << best.params.learning_rate << ", trees " << best.params.num_trees << ") mean " << result.selection_metric
         << ' ' << best.mean_score << '\n';
    return kExitOk;
  }

  ModelBundle load_bundle() const {
    if (opt_.model.empty()) throw UsageError("--model is required");
    std::ifstream in(opt_.model);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + opt_.model);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::MalformedModel, e.what());
    }
    return bundle_from_json(j);
  }

  struct Scored {
    FeatureMatrix rows;
    std::vector<double> actual, gbdt, forest, stack, baseline;
  };

  /// Held-out (or all) rows with every model's prediction, back on the kWh scale.
  Scored score(const ModelBundle& bundle, bool all_rows) const {
    require_meter();
    auto data = prepare_data(cfg_, bundle.spec);
    Scored s;
    s.rows = all_rows ? data.matrix : temporal_split(data.matrix, bundle.split_year).second;
    const auto p = predict_bundle(bundle, s.rows);
    s.actual = invert_transform(s.rows.y, bundle.spec);
    s.gbdt = invert_transform(p.gbdt, bundle.spec);
    s.forest = invert_transform(p.forest, bundle.spec);
    s.stack = invert_transform(p.stack, bundle.spec);
    s.baseline = persistence_baseline(s.rows, data.imputed.series);
    return s;
  }

  int predict() {
    const auto bundle = load_bundle();
    const auto s = score(bundle, opt_.all_rows);
    std::ostringstream csv_out;
    csv_out << "timestamp,actual,gbdt,forest,stack,day_minus_1\n";
    for (std::size_t i = 0; i < s.rows.rows(); ++i) {
      csv_out << format_slot_time(s.rows.timestamps[i]) << ',' << csv::format_number(s.actual[i]) << ','
              << csv::format_number(s.gbdt[i]) << ',' << csv::format_number(s.forest[i]) << ','
              << csv::format_number(s.stack[i]) << ',' << csv::format_number(s.baseline[i]) << '\n';
    }
    write_text(out_path("predictions.csv"), csv_out.str());
    out_ << "predict: " << s.rows.rows() << " rows\n";
    return kExitOk;
  }

  int evaluate() {
    Json j{{"schema", "smartload.metrics"}, {"schema_version", 1}, {"provenance", provenance("evaluate")}};
    if (!opt_.pred.empty() || !opt_.actual.empty()) {
      if (opt_.pred.empty() || opt_.actual.empty()) throw UsageError("--pred and --actual must be given together");
      const auto pred = read_table(opt_.pred);
      const auto actual = read_table(opt_.actual);
      const auto pc = pick_column(pred, opt_.pred_column, {"gbdt", "predicted", "value"});
      const auto ac = pick_column(actual, opt_.actual_column, {"actual", "value"});
      j["metrics"] = to_json(evaluate_metrics(actual.numbers(ac), pred.numbers(pc), cfg_.nrmse_normalizer));
    } else {
      const auto bundle = load_bundle();
      const auto s = score(bundle, opt_.all_rows);
      const auto gbdt = evaluate_metrics(s.actual, s.gbdt, cfg_.nrmse_normalizer);
      const auto base = evaluate_metrics(s.actual, s.baseline, cfg_.nrmse_normalizer);
      j["rows"] = s.rows.rows();
      j["split_year"] = bundle.split_year;
      j["gbdt"] = to_json(gbdt);
      j["forest"] = to_json(evaluate_metrics(s.actual, s.forest, cfg_.nrmse_normalizer));
      j["stack"] = to_json(evaluate_metrics(s.actual, s.stack, cfg_.nrmse_normalizer));
      j["day_minus_1_baseline"] = to_json(base);
      j["gbdt_rmse_improvement_over_baseline"] = 1.0 - gbdt.rmse / base.rmse;
    }
    write_json(out_path("metrics.json"), j);
    out_ << j.dump(2) << '\n';
    return kExitOk;
  }

  int report() {
    if (opt_.pred.empty()) throw UsageError("--pred is required");
    const auto table = read_table(opt_.pred);
    const auto tc = table.column("timestamp");
    if (!tc) throw Error(ErrorKind::MalformedHeader, "predictions need a timestamp column");
    std::vector<SlotTime> times;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      auto t = *tc < table.rows[r].size() ? parse_slot_time(csv::trim(table.rows[r][*tc])) : std::nullopt;
      if (!t) throw Error(ErrorKind::UnparseableDate, "predictions row " + std::to_string(r + 2));
      times.push_back(*t);
    }
    if (times.empty()) throw Error(ErrorKind::EmptyWindow, "predictions file has no rows");
    const auto actual = table.numbers(pick_column(table, opt_.actual_column, {"actual"}));
    const auto predicted = table.numbers(pick_column(table, opt_.pred_column, {"gbdt", "predicted"}));
    Date start = times.front().date;
    if (!opt_.start.empty()) {
      auto d = parse_date(opt_.start);
      if (!d) throw UsageError("--start must be a date");
      start = *d;
    }
    if (opt_.days < 1) throw UsageError("--days must be >= 1");
    const double scale = given("--scale") ? opt_.scale : cfg_.features.scale_factor;
    const auto rows = emit_plot_data(times, actual, predicted, start, opt_.days, scale);
    std::ostringstream csv_out;
    write_plot_csv(csv_out, rows);
    write_text(out_path("plot_data.csv"), csv_out.str());
    out_ << "report: " << rows.size() << " plot rows from " << format_date(start) << '\n';
    return kExitOk;
  }

  int validate() {
    if (opt_.fixture.empty()) throw UsageError("fixture path is required");
    const auto rows = parse_fixture_csv(std::filesystem::path(opt_.fixture));
    const auto rep = check_fixture(rows);
    Json tables = Json::array();
    for (const auto& t : rep.tables) {
      tables.push_back({{"combinations", t.combinations},
                        {"rows", t.rows},
                        {"mae_over_rae", t.mae_over_rae},
                        {"mae_over_rae_max_rel_dev", t.mae_over_rae_max_rel_dev},
                        {"rmse2_over_rse", t.rmse2_over_rse},
                        {"rmse2_over_rse_max_rel_dev", t.rmse2_over_rse_max_rel_dev},
                        {"cod_plus_rse_max_abs_dev", t.cod_plus_rse_max_abs_dev},
                        {"ok", t.ok}});
      out_ << "table " << t.combinations << ": rows=" << t.rows << " mae/rae=" << t.mae_over_rae
           << " (max rel dev " << t.mae_over_rae_max_rel_dev << ") rmse^2/rse=" << t.rmse2_over_rse
           << " (max rel dev " << t.rmse2_over_rse_max_rel_dev << ") max|cod+rse-1|=" << t.cod_plus_rse_max_abs_dev
           << (t.ok ? " OK" : " FAIL") << '\n';
    }
    Json j{{"schema", "smartload.fixture_report"},
           {"schema_version", 1},
           {"provenance", provenance("validate-fixture")},
           {"total_rows", rep.total_rows},
           {"tolerances", {{"cod_plus_rse_abs", kCodRseTolerance}, {"table_constant_rel", kTableConstantRelTolerance}}},
           {"tables", tables},
           {"ok", rep.ok}};
    if (!opt_.table2.empty()) {
      std::ifstream in(opt_.table2);
      if (!in) throw Error(ErrorKind::Io, "cannot open " + opt_.table2);
      Json t2 = Json::array();
      for (const auto& r : parse_nrmse_fixture_csv(in)) {
        t2.push_back({{"combinations", r.combinations}, {"nrmse_test", r.nrmse_test}});
      }
      j["published_test_nrmse"] = t2;
    }
    write_json(out_path("fixture_report.json"), j);
    out_ << (rep.ok ? "fixture consistent" : "fixture INCONSISTENT") << " (" << rep.total_rows << " rows)\n";
    return rep.ok ? kExitOk : kExitDataError;
  }

  int synth() {
    SyntheticOptions s;
    s.seed = require_seed();
    s.first_year = opt_.first_year;
    s.years = opt_.years;
    s.days = opt_.synth_days;
    s.start_day = opt_.start_day;
    s.gap_fraction = opt_.gap_fraction;
    if (s.years < 1 || s.days < 0 || s.start_day < 0 || s.start_day > 365 ||
        !(s.gap_fraction >= 0.0 && s.gap_fraction < 1.0)) {
      throw UsageError("--years must be >= 1, --days >= 0, --start-day in [0, 365] and --gap-fraction in [0, 1)");
    }
    const auto data = generate_synthetic(s);
    std::ostringstream meter, holidays;
    write_wide_csv(meter, data.records);
    write_holiday_csv(holidays, data.calendar);
    write_text(out_path("meter.csv"), meter.str());
    write_text(out_path("holidays.csv"), holidays.str());
    out_ << "synth: " << data.records.size() << " days written\n";
    return kExitOk;
  }

  const Options& opt_;
  const CLI::App& sub_;
  std::ostream& out_;
  PipelineConfig cfg_;
};

}  // namespace smartload::cli

namespace smartload {

/// Entry point shared by the executable and the tests. Returns 0 on success,
/// 1 on data errors and 2 on usage errors.
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  using namespace cli;
  Options opt;
  CLI::App app{"Smart-meter consumption forecasting toolkit", "smartload"};
  app.require_subcommand(1);

  auto inputs = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "TOML-like config file")->check(CLI::ExistingFile);
    sub->add_option("--meter", opt.meter, "Wide half-hourly meter CSV");
    sub->add_option("--holidays", opt.holidays, "Holiday CSV (date,is_holiday,name)");
    sub->add_option("--out", opt.out, "Output directory");
  };
  auto tuning = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "Random seed (required)");
    sub->add_option("--split-year", opt.split_year, "Last training year");
    sub->add_option("--metric", opt.metric, "Selection metric: mae or rmse")->check(CLI::IsMember({"mae", "rmse"}));
  };

  std::map<std::string, CLI::App*> subs;
  subs["ingest"] = app.add_subcommand("ingest", "Parse the meter CSV into a long series");
  subs["impute"] = app.add_subcommand("impute", "Fill gaps and report the imputation");
  subs["featurize"] = app.add_subcommand("featurize", "Build the feature matrix");
  subs["train"] = app.add_subcommand("train", "Fit boosted model, forest and stack with fixed hyperparameters");
  subs["tune"] = app.add_subcommand("tune", "Random-search the boosted model, then fit forest and stack");
  subs["predict"] = app.add_subcommand("predict", "Predict held-out rows with a model bundle");
  subs["evaluate"] = app.add_subcommand("evaluate", "Score predictions (files or a model bundle)");
  subs["report"] = app.add_subcommand("report", "Emit plot data for a prediction window");
  subs["validate-fixture"] = app.add_subcommand("validate-fixture", "Check the published tuning tables");
  subs["synth"] = app.add_subcommand("synth", "Write a synthetic meter and holiday CSV");

  for (const auto& name : {"ingest", "impute", "featurize", "train", "tune", "predict", "evaluate", "report"}) {
    inputs(subs[name]);
  }
  tuning(subs["train"]);
  tuning(subs["tune"]);
  subs["tune"]->add_option("--m", opt.m, "Number of sampled parameter combinations")->check(CLI::PositiveNumber);
  for (const auto& name : {"predict", "evaluate"}) {
    subs[name]->add_option("--model", opt.model, "Model bundle JSON");
    subs[name]->add_flag("--all", opt.all_rows, "Use every row, not just the held-out years");
  }
  for (const auto& name : {"evaluate", "report"}) {
    subs[name]->add_option("--pred", opt.pred, "Predictions CSV");
    subs[name]->add_option("--pred-column", opt.pred_column, "Prediction column name");
    subs[name]->add_option("--actual-column", opt.actual_column, "Observed column name");
  }
  subs["evaluate"]->add_option("--actual", opt.actual, "Observed values CSV");
  subs["report"]->add_option("--start", opt.start, "First day of the window (default: first prediction)");
  subs["report"]->add_option("--days", opt.days, "Window length in days");
  subs["report"]->add_option("--scale", opt.scale, "Multiplier for plotted values (default: features.scale_factor)");
  subs["validate-fixture"]->add_option("fixture", opt.fixture, "Appendix-style fixture CSV")->required();
  subs["validate-fixture"]->add_option("--table2", opt.table2, "Published test NRMSE CSV");
  subs["validate-fixture"]->add_option("--out", opt.out, "Output directory");
  subs["synth"]->add_option("--out", opt.out, "Output directory");
  subs["synth"]->add_option("--seed", opt.seed, "Random seed (required)");
  subs["synth"]->add_option("--first-year", opt.first_year, "First calendar year");
  subs["synth"]->add_option("--years", opt.years, "Number of years");
  subs["synth"]->add_option("--days", opt.synth_days, "Number of days; overrides --years when positive");
  subs["synth"]->add_option("--start-day", opt.start_day, "Days between 1 January of --first-year and the first day");
  subs["synth"]->add_option("--gap-fraction", opt.gap_fraction, "Fraction of slots punched out");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) {
        if (sub->count("--help")) {
          out << sub->help();
          return kExitOk;
        }
        return Runner(opt, *sub, out).run(name);
      }
    }
    err << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace smartload
