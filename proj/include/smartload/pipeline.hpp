#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smartload/config.hpp"
#include "smartload/featurize.hpp"
#include "smartload/forest.hpp"
#include "smartload/gbdt.hpp"
#include "smartload/impute.hpp"
#include "smartload/ingest.hpp"
#include "smartload/metrics.hpp"
#include "smartload/model_json.hpp"
#include "smartload/stacking.hpp"
#include "smartload/tuning.hpp"

namespace smartload {

struct PreparedData {
  WideCsv wide;
  LoadSeries raw;
  ImputationResult imputed;
  HolidayCalendar calendar;
  FeatureMatrix matrix;
};

enum class Stage { ingest, impute, featurize };

inline PreparedData prepare_data(const PipelineConfig& cfg, const FeatureSpec& spec, Stage until = Stage::featurize) {
  if (cfg.meter_csv.empty()) throw Error(ErrorKind::InvalidArgument, "no meter CSV given");
  PreparedData d;
  d.wide = parse_wide_csv(std::filesystem::path(cfg.meter_csv));
  d.raw = to_long_series(d.wide.records);
  if (!cfg.holiday_csv.empty()) d.calendar = parse_holiday_calendar(std::filesystem::path(cfg.holiday_csv));
  if (until == Stage::ingest) return d;
  d.imputed = impute(d.raw, cfg.impute);
  if (until == Stage::impute) return d;
  d.matrix = build_matrix(d.imputed.series, d.calendar, spec);
  return d;
}

/// Boosted model, forest and the linear stack over their predictions, plus
/// what `predict` needs to rebuild features.
struct ModelBundle {
  FeatureSpec spec;
  int split_year = 0;
  GbdtModel gbdt;
  ForestModel forest;
  StackModel stack;
  bool stack_out_of_fold = false;
};

struct BundlePredictions {
  std::vector<double> gbdt;
  std::vector<double> forest;
  std::vector<double> stack;
};

inline BundlePredictions predict_bundle(const ModelBundle& bundle, const FeatureMatrix& m) {
  BundlePredictions p;
  p.gbdt = predict_gbdt(bundle.gbdt, m);
  p.forest = predict_forest(bundle.forest, m);
  p.stack.resize(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) p.stack[i] = predict_stack(bundle.stack, p.gbdt[i], p.forest[i]);
  return p;
}

/// Fits the forest and the stack around an already-trained boosted model. The
/// stack sees in-sample base predictions unless out_of_fold is set, in which case
/// each of three contiguous blocks is predicted by base models fit on the others.
inline ModelBundle assemble_bundle(const FeatureMatrix& train, GbdtModel gbdt, const ForestParams& forest_params,
                                   std::uint64_t seed, const FeatureSpec& spec, int split_year,
                                   bool out_of_fold = false) {
  ModelBundle bundle;
  bundle.spec = spec;
  bundle.split_year = split_year;
  bundle.gbdt = std::move(gbdt);
  bundle.forest = fit_forest(train, forest_params, seed);
  bundle.stack_out_of_fold = out_of_fold;

  std::vector<double> b, d;
  if (!out_of_fold) {
    b = predict_gbdt(bundle.gbdt, train);
    d = predict_forest(bundle.forest, train);
  } else {
    constexpr std::size_t kBlocks = 3;
    const std::size_t n = train.rows();
    b.resize(n);
    d.resize(n);
    for (std::size_t k = 0; k < kBlocks; ++k) {
      const std::size_t lo = n * k / kBlocks, hi = n * (k + 1) / kBlocks;
      FeatureMatrix rest = train.slice(0, lo);
      auto tail = train.slice(hi, n);
      for (std::size_t i = 0; i < tail.rows(); ++i) {
        rest.push_row(tail.row(i), tail.y[i], tail.timestamps[i], tail.series_index[i]);
      }
      if (rest.rows() == 0 || hi == lo) throw Error(ErrorKind::InsufficientData, "too few rows for out-of-fold stacking");
      const auto g = fit_gbdt(rest, bundle.gbdt.params);
      const auto f = fit_forest(rest, forest_params, stream_seed(seed, k + 1));
      for (std::size_t i = lo; i < hi; ++i) {
        b[i] = predict_gbdt(g, train.row(i));
        d[i] = predict_forest(f, train.row(i));
      }
    }
  }
  bundle.stack = fit_stack(b, d, train.y);
  return bundle;
}

inline Json to_json(const ModelBundle& b) {
  return Json{{"schema", "smartload.model_bundle"},
              {"schema_version", kModelSchemaVersion},
              {"feature_spec", to_json(b.spec)},
              {"split_year", b.split_year},
              {"stack_out_of_fold", b.stack_out_of_fold},
              {"gbdt", to_json(b.gbdt)},
              {"forest", to_json(b.forest)},
              {"stack", to_json(b.stack)}};
}

inline ModelBundle bundle_from_json(const Json& j) {
  detail::expect_schema(j, "smartload.model_bundle");
  return detail::guarded([&] {
    ModelBundle b;
    b.spec = feature_spec_from_json(j.at("feature_spec"));
    b.split_year = j.at("split_year").get<int>();
    b.stack_out_of_fold = j.value("stack_out_of_fold", false);
    b.gbdt = gbdt_from_json(j.at("gbdt"));
    b.forest = forest_from_json(j.at("forest"));
    b.stack = stack_from_json(j.at("stack"));
    return b;
  });
}

/// Day-1 persistence: the same slot one day earlier, in kWh, for every matrix row.
inline std::vector<double> persistence_baseline(const FeatureMatrix& m, const LoadSeries& imputed) {
  std::vector<double> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto t = m.series_index[i];
    if (t < kSlotsPerDay || !imputed.values[t - kSlotsPerDay]) {
      throw Error(ErrorKind::InsufficientHistory, "no day-1 value for " + format_slot_time(m.timestamps[i]));
    }
    out[i] = *imputed.values[t - kSlotsPerDay];
  }
  return out;
}

inline Json to_json(const MetricsReport& r) {
  return Json{{"n", r.n},
              {"mae", r.mae},
              {"rmse", r.rmse},
              {"nrmse", r.nrmse},
              {"nrmse_normalizer", to_string(r.normalizer)},
              {"rae", r.rae},
              {"rse", r.rse},
              {"r2_explained", r.r2_explained},
              {"cod", r.cod}};
}

inline Json to_json(const ImputationReport& r) {
  return Json{{"total_entries", r.total_entries},
              {"missing_before", r.missing_before},
              {"filled_linear", r.filled_linear},
              {"filled_history", r.filled_history},
              {"unfilled", r.unfilled},
              {"missing_fraction_before", r.missing_fraction_before}};
}

inline Json to_json(const TuningResult& r) {
  Json candidates = Json::array();
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    const auto& c = r.candidates[i];
    candidates.push_back({{"index", i},
                          {"hyperparams", to_json(c.params)},
                          {"fold_scores", c.fold_scores},
                          {"mean_score", c.mean_score}});
  }
  return Json{{"selection_metric", r.selection_metric},
              {"candidates", std::move(candidates)},
              {"best_index", r.best_index},
              {"best", to_json(r.best)},
              {"final_model_trees", r.final_model.trees.size()}};
}

}  // namespace smartload
