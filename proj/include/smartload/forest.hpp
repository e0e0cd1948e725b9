#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "smartload/featurize.hpp"
#include "smartload/rng.hpp"
#include "smartload/tree.hpp"

namespace smartload {

struct ForestParams {
  int tree_count = 8;
  int num_leaves = 128;
  int min_leaf_instances = 1;
  bool bootstrap = true;

  void validate() const {
    if (tree_count < 1 || num_leaves < 1 || min_leaf_instances < 1) {
      throw Error(ErrorKind::InvalidArgument, "forest tree_count, num_leaves and min_leaf_instances must be >= 1");
    }
  }

  friend bool operator==(const ForestParams&, const ForestParams&) = default;
};

/// Bagged CART regressor; prediction is the unweighted mean over member trees.
struct ForestModel {
  std::vector<RegressionTree> trees;
  std::uint64_t bootstrap_seed = 0;
  ForestParams params;
  std::vector<std::string> feature_names;

  std::size_t tree_count() const { return trees.size(); }
  friend bool operator==(const ForestModel&, const ForestModel&) = default;
};

/// Bootstrap sample for tree `t`: n draws with replacement from the stream
/// (seed, t), sorted so leaf means accumulate in row order.
inline std::vector<std::size_t> bootstrap_rows(std::size_t n, std::uint64_t seed, std::size_t t) {
  Rng rng(stream_seed(seed, t));
  std::vector<std::size_t> rows(n);
  for (auto& r : rows) r = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
  std::sort(rows.begin(), rows.end());
  return rows;
}

inline ForestModel fit_forest(const FeatureMatrix& m, const ForestParams& params, std::uint64_t seed) {
  params.validate();
  if (m.rows() == 0) throw Error(ErrorKind::EmptyMatrix, "cannot fit a forest on an empty matrix");
  ForestModel model;
  model.bootstrap_seed = seed;
  model.params = params;
  model.feature_names = m.column_names;

  detail::ColumnIndex index(m);
  detail::TreeBuilder builder(index, static_cast<std::size_t>(params.min_leaf_instances));
  for (int t = 0; t < params.tree_count; ++t) {
    std::vector<std::size_t> rows;
    if (params.bootstrap) {
      rows = bootstrap_rows(m.rows(), seed, static_cast<std::size_t>(t));
    } else {
      rows.resize(m.rows());
      std::iota(rows.begin(), rows.end(), 0);
    }
    model.trees.push_back(builder.grow(m.y, rows, static_cast<std::size_t>(params.num_leaves)));
  }
  return model;
}

inline double predict_forest(const ForestModel& model, std::span<const double> x) {
  if (model.trees.empty()) throw Error(ErrorKind::MalformedModel, "forest has no trees");
  double sum = 0.0;
  for (const auto& tree : model.trees) sum += tree.predict(x);
  return sum / static_cast<double>(model.trees.size());
}

inline std::vector<double> predict_forest(const ForestModel& model, const FeatureMatrix& m) {
  std::vector<double> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = predict_forest(model, m.row(i));
  return out;
}

}  // namespace smartload
