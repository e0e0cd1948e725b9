#pragma once

#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "smartload/featurize.hpp"
#include "smartload/tree.hpp"

namespace smartload {

/// Least-squares MART: F(x) = F0 + learning_rate * sum_j tree_j(x).
struct GbdtModel {
  double initial_prediction = 0.0;
  double learning_rate = 1.0;
  HyperParams params;
  std::vector<RegressionTree> trees;
  std::vector<std::string> feature_names;

  friend bool operator==(const GbdtModel&, const GbdtModel&) = default;
};

inline constexpr double kEarlyStopSse = 1e-12;

/// `index` must have been built from `m`; sharing it across fits on the same
/// matrix skips the per-fit column sort.
inline GbdtModel fit_gbdt(const FeatureMatrix& m, const HyperParams& params, const detail::ColumnIndex& index) {
  params.validate();
  if (m.rows() == 0) throw Error(ErrorKind::EmptyMatrix, "cannot boost on an empty matrix");
  if (index.rows() != m.rows() || index.features() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "column index was built for another matrix");
  }
  const std::size_t n = m.rows();

  GbdtModel model;
  model.params = params;
  model.learning_rate = params.learning_rate;
  model.feature_names = m.column_names;
  model.initial_prediction = std::accumulate(m.y.begin(), m.y.end(), 0.0) / static_cast<double>(n);

  detail::TreeBuilder builder(index, static_cast<std::size_t>(params.min_leaf_instances));
  std::vector<double> fitted(n, model.initial_prediction);
  std::vector<double> residual(n);
  std::vector<std::size_t> rows(n);
  std::vector<detail::LeafRange> leaves;

  for (int j = 0; j < params.num_trees; ++j) {
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual[i] = m.y[i] - fitted[i];
      sse += residual[i] * residual[i];
    }
    if (sse < kEarlyStopSse * static_cast<double>(n)) break;

    std::iota(rows.begin(), rows.end(), 0);
    auto tree = builder.grow(residual, rows, static_cast<std::size_t>(params.num_leaves), &leaves);
    // Every training row sits in exactly one leaf range, so the update needs no descent.
    for (const auto& leaf : leaves) {
      const double step = params.learning_rate * tree.nodes()[leaf.node].value;
      for (std::size_t k = leaf.begin; k < leaf.end; ++k) fitted[rows[k]] += step;
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

inline GbdtModel fit_gbdt(const FeatureMatrix& m, const HyperParams& params) {
  params.validate();
  if (m.rows() == 0) throw Error(ErrorKind::EmptyMatrix, "cannot boost on an empty matrix");
  return fit_gbdt(m, params, detail::ColumnIndex(m));
}

inline double predict_gbdt(const GbdtModel& model, std::span<const double> x) {
  if (x.size() != model.feature_names.size()) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(model.feature_names.size()) +
                                                  " features, got " + std::to_string(x.size()));
  }
  double sum = 0.0;
  for (const auto& tree : model.trees) sum += tree.predict(x);
  return model.initial_prediction + model.learning_rate * sum;
}

inline std::vector<double> predict_gbdt(const GbdtModel& model, const FeatureMatrix& m) {
  std::vector<double> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = predict_gbdt(model, m.row(i));
  return out;
}

}  // namespace smartload
