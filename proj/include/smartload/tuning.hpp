#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smartload/error.hpp"
#include "smartload/featurize.hpp"
#include "smartload/gbdt.hpp"
#include "smartload/metrics.hpp"
#include "smartload/rng.hpp"

namespace smartload {

template <typename T>
struct Range {
  T lower{};
  T upper{};

  bool contains(T v) const { return v >= lower && v <= upper; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Sampling envelope for random search. The defaults cover every published
/// configuration (leaves 2-126, min leaf 1-48, rate 0.027-0.39997, trees 22-482).
struct ParamSpace {
  Range<int> num_leaves{2, 128};
  Range<int> min_leaf_instances{1, 50};
  Range<double> learning_rate{0.02, 0.4};  // sampled log-uniformly
  Range<int> num_trees{20, 500};

  void validate() const {
    if (num_leaves.lower > num_leaves.upper || min_leaf_instances.lower > min_leaf_instances.upper ||
        learning_rate.lower > learning_rate.upper || num_trees.lower > num_trees.upper) {
      throw Error(ErrorKind::InvalidArgument, "parameter range has lower > upper");
    }
    if (num_leaves.lower < 1 || min_leaf_instances.lower < 1 || num_trees.lower < 1 ||
        !(learning_rate.lower > 0.0) || learning_rate.upper > 1.0) {
      throw Error(ErrorKind::InvalidArgument, "parameter range outside the valid hyperparameter domain");
    }
  }

  bool contains(const HyperParams& p) const {
    return num_leaves.contains(p.num_leaves) && min_leaf_instances.contains(p.min_leaf_instances) &&
           learning_rate.contains(p.learning_rate) && num_trees.contains(p.num_trees);
  }

  friend bool operator==(const ParamSpace&, const ParamSpace&) = default;
};

/// Draw i comes from its own stream (seed, i), so a longer sweep with the same
/// seed extends a shorter one.
inline std::vector<HyperParams> sample_hyperparams(std::uint64_t seed, const ParamSpace& space, std::size_t m) {
  space.validate();
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "m must be >= 1");
  std::vector<HyperParams> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rng rng(stream_seed(seed, i));
    HyperParams p;
    p.num_leaves = static_cast<int>(rng.uniform_int(space.num_leaves.lower, space.num_leaves.upper));
    p.min_leaf_instances =
        static_cast<int>(rng.uniform_int(space.min_leaf_instances.lower, space.min_leaf_instances.upper));
    p.learning_rate = rng.log_uniform(space.learning_rate.lower, space.learning_rate.upper);
    p.num_trees = static_cast<int>(rng.uniform_int(space.num_trees.lower, space.num_trees.upper));
    out.push_back(p);
  }
  return out;
}

/// Train = rows with year <= split_year, test = the rest; row order is kept.
inline std::pair<FeatureMatrix, FeatureMatrix> temporal_split(const FeatureMatrix& m, int split_year) {
  FeatureMatrix train = m.empty_like();
  FeatureMatrix test = m.empty_like();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto& side = year_of(m.timestamps[i].date) <= split_year ? train : test;
    side.push_row(m.row(i), m.y[i], m.timestamps[i], m.series_index[i]);
  }
  if (train.rows() == 0) throw Error(ErrorKind::EmptySide, "no rows in or before " + std::to_string(split_year));
  if (test.rows() == 0) throw Error(ErrorKind::EmptySide, "no rows after " + std::to_string(split_year));
  return {std::move(train), std::move(test)};
}

enum class SelectionMetric { mae, rmse };

inline std::string to_string(SelectionMetric m) { return m == SelectionMetric::rmse ? "rmse" : "mae"; }

inline SelectionMetric parse_selection_metric(const std::string& name) {
  if (name == "mae") return SelectionMetric::mae;
  if (name == "rmse") return SelectionMetric::rmse;
  throw Error(ErrorKind::InvalidArgument, "unknown selection metric '" + name + "'");
}

/// Scores one holdout: lower is better.
using Scorer = std::function<double(const HyperParams&, std::span<const double> actual, std::span<const double> predicted)>;

inline Scorer make_scorer(SelectionMetric metric) {
  if (metric == SelectionMetric::rmse) {
    return [](const HyperParams&, std::span<const double> a, std::span<const double> p) { return rmse(a, p); };
  }
  return [](const HyperParams&, std::span<const double> a, std::span<const double> p) { return mae(a, p); };
}

/// Either forward-chaining blocks (iterations > 0) or a single tail holdout.
struct Resampling {
  std::size_t iterations = 3;
  std::optional<double> holdout_fraction;
};

struct Fold {
  std::size_t fit_end = 0;  // fit on rows [0, fit_end)
  std::size_t holdout_end = 0;  // validate on rows [fit_end, holdout_end)
};

/// Forward chaining: the rows are cut into iterations + 1 contiguous blocks and
/// iteration k fits on blocks 0..k-1 and validates on block k.
inline std::vector<Fold> make_folds(std::size_t n, const Resampling& resampling) {
  std::vector<Fold> folds;
  if (resampling.holdout_fraction) {
    const double f = *resampling.holdout_fraction;
    if (!(f > 0.0 && f < 1.0)) throw Error(ErrorKind::InvalidArgument, "holdout fraction must lie in (0, 1)");
    const auto hold = static_cast<std::size_t>(static_cast<double>(n) * f);
    folds.push_back({n - hold, n});
  } else {
    if (resampling.iterations == 0) throw Error(ErrorKind::InvalidArgument, "resampling needs >= 1 iteration");
    const std::size_t blocks = resampling.iterations + 1;
    for (std::size_t k = 1; k < blocks; ++k) folds.push_back({n * k / blocks, n * (k + 1) / blocks});
  }
  for (const auto& f : folds) {
    if (f.fit_end == 0 || f.holdout_end <= f.fit_end) {
      throw Error(ErrorKind::InsufficientData, "too few rows (" + std::to_string(n) + ") for the resampling plan");
    }
  }
  return folds;
}

struct Candidate {
  HyperParams params;
  std::vector<double> fold_scores;
  double mean_score = 0.0;
};

struct TuningResult {
  std::vector<Candidate> candidates;
  std::size_t best_index = 0;
  HyperParams best;
  GbdtModel final_model;
  std::string selection_metric;
};

struct TuningOptions {
  ParamSpace space;
  std::size_t m = 5;
  Resampling resampling;
  SelectionMetric metric = SelectionMetric::mae;
  std::uint64_t seed = 0;
  Scorer scorer;  // overrides `metric` when set
};

/// Evaluates each candidate on every holdout, averages, keeps the lowest mean
/// (earliest on ties), then refits that candidate on all of `train`.
inline TuningResult evaluate_candidates(const FeatureMatrix& train, const std::vector<HyperParams>& candidates,
                                        const Resampling& resampling, const Scorer& scorer,
                                        const std::string& metric_name) {
  if (candidates.empty()) throw Error(ErrorKind::InvalidArgument, "no candidates to evaluate");
  const auto folds = make_folds(train.rows(), resampling);
  std::vector<FeatureMatrix> fit_parts, holdouts;
  for (const auto& f : folds) {
    fit_parts.push_back(train.slice(0, f.fit_end));
    holdouts.push_back(train.slice(f.fit_end, f.holdout_end));
  }
  std::vector<detail::ColumnIndex> indexes;
  indexes.reserve(folds.size());
  for (const auto& part : fit_parts) indexes.emplace_back(part);

  TuningResult result;
  result.selection_metric = metric_name;
  for (const auto& params : candidates) {
    Candidate c{params, {}, 0.0};
    for (std::size_t k = 0; k < folds.size(); ++k) {
      const auto model = fit_gbdt(fit_parts[k], params, indexes[k]);
      const auto predicted = predict_gbdt(model, holdouts[k]);
      c.fold_scores.push_back(scorer(params, holdouts[k].y, predicted));
    }
    c.mean_score = std::accumulate(c.fold_scores.begin(), c.fold_scores.end(), 0.0) /
                   static_cast<double>(c.fold_scores.size());
    result.candidates.push_back(std::move(c));
  }
  for (std::size_t i = 1; i < result.candidates.size(); ++i) {
    if (result.candidates[i].mean_score < result.candidates[result.best_index].mean_score) result.best_index = i;
  }
  result.best = result.candidates[result.best_index].params;
  result.final_model = fit_gbdt(train, result.best);
  return result;
}

inline TuningResult random_search(const FeatureMatrix& train, const TuningOptions& options) {
  const auto candidates = sample_hyperparams(options.seed, options.space, options.m);
  const Scorer scorer = options.scorer ? options.scorer : make_scorer(options.metric);
  return evaluate_candidates(train, candidates, options.resampling, scorer,
                             options.scorer ? std::string("custom") : to_string(options.metric));
}

}  // namespace smartload
