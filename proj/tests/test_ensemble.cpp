#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "support.hpp"

using namespace smartload;
using namespace smartload::test;

namespace {

const FeatureMatrix& two_points() {
  static const auto m = FeatureMatrix::from_rows({{0.0}, {1.0}}, {0.0, 10.0});
  return m;
}

HyperParams params(int leaves, int min_leaf, double rate, int trees) { return {leaves, min_leaf, rate, trees}; }

double staged_sse(const GbdtModel& model, const FeatureMatrix& m, std::size_t stages) {
  double sse = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double f = model.initial_prediction;
    for (std::size_t j = 0; j < stages; ++j) f += model.learning_rate * model.trees[j].predict(m.row(i));
    sse += (m.y[i] - f) * (m.y[i] - f);
  }
  return sse;
}

}  // namespace

TEST(FitGbdt, HandComputedTwoPointCases) {
  auto model = fit_gbdt(two_points(), params(2, 1, 1.0, 1));
  EXPECT_EQ(model.initial_prediction, 5.0);
  auto pred = predict_gbdt(model, two_points());
  EXPECT_NEAR(pred[0], 0.0, 1e-12);
  EXPECT_NEAR(pred[1], 10.0, 1e-12);

  model = fit_gbdt(two_points(), params(2, 1, 0.5, 1));
  pred = predict_gbdt(model, two_points());
  EXPECT_NEAR(pred[0], 2.5, 1e-12);
  EXPECT_NEAR(pred[1], 7.5, 1e-12);
  EXPECT_NEAR(predict_gbdt(model, std::vector<double>{1.0}), 7.5, 1e-12);
}

TEST(FitGbdt, SingleLeafModelIsConstant) {
  Rng rng(201);
  const auto m = FeatureMatrix::from_rows(random_rows(rng, 30, 2, 0), random_targets(rng, 30, 0));
  const auto model = fit_gbdt(m, params(1, 1, 0.7, 5));
  const double mean = std::accumulate(m.y.begin(), m.y.end(), 0.0) / 30.0;
  for (double p : predict_gbdt(model, m)) EXPECT_NEAR(p, mean, 1e-12);
}

TEST(FitGbdt, StopsEarlyOnPerfectFit) {
  const auto model = fit_gbdt(two_points(), params(2, 1, 1.0, 50));
  EXPECT_EQ(model.trees.size(), 1u);
}

TEST(FitGbdt, RejectsInvalidParams) {
  EXPECT_EQ(kind_of([] { fit_gbdt(two_points(), params(2, 1, 1.0, 0)); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { fit_gbdt(two_points(), params(2, 1, 0.0, 1)); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { fit_gbdt(two_points(), params(2, 1, 1.5, 1)); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { fit_gbdt(two_points(), params(2, 0, 0.5, 1)); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { fit_gbdt(FeatureMatrix{}, params(2, 1, 0.5, 1)); }), ErrorKind::EmptyMatrix);
  const auto other = FeatureMatrix::from_rows({{0.0, 1.0}}, {1.0});
  EXPECT_EQ(kind_of([&] { fit_gbdt(two_points(), params(2, 1, 0.5, 1), detail::ColumnIndex(other)); }),
            ErrorKind::DimensionMismatch);
}

TEST(PredictGbdt, IsAdditiveOverTrees) {
  Rng rng(203);
  const auto m = FeatureMatrix::from_rows(random_rows(rng, 120, 3, 0), random_targets(rng, 120, 0));
  const auto model = fit_gbdt(m, params(6, 3, 0.3, 25));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double manual = 0.0;
    for (const auto& t : model.trees) manual += t.predict(m.row(i));
    EXPECT_NEAR(predict_gbdt(model, m.row(i)), model.initial_prediction + model.learning_rate * manual, 1e-12);
  }
  EXPECT_EQ(kind_of([&] { predict_gbdt(model, std::vector<double>{1.0}); }), ErrorKind::DimensionMismatch);
}

TEST(FitGbdt, TrainingLossIsMonotone) {
  Rng rng(207);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(5, 80));
    const auto m = FeatureMatrix::from_rows(random_rows(rng, n, 3, trial % 2 ? 4 : 0), random_targets(rng, n, 0));
    const auto p = params(static_cast<int>(rng.uniform_int(2, 10)), static_cast<int>(rng.uniform_int(1, 5)),
                          1.0 - rng.uniform01(), static_cast<int>(rng.uniform_int(1, 30)));
    const auto model = fit_gbdt(m, p);
    double prev = staged_sse(model, m, 0);
    for (std::size_t j = 1; j <= model.trees.size(); ++j) {
      const double cur = staged_sse(model, m, j);
      EXPECT_LE(cur, prev * (1.0 + 1e-9) + 1e-300) << "trial " << trial << " stage " << j;
      prev = cur;
    }
  }
}

TEST(FitGbdt, DeterministicAndIndexSharingIsTransparent) {
  Rng rng(211);
  const auto m = FeatureMatrix::from_rows(random_rows(rng, 300, 4, 0), random_targets(rng, 300, 0));
  const auto p = params(12, 4, 0.2, 40);
  const auto a = fit_gbdt(m, p);
  const auto b = fit_gbdt(m, p);
  const detail::ColumnIndex index(m);
  const auto c = fit_gbdt(m, p, index);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(predict_gbdt(a, m), predict_gbdt(c, m));
}

TEST(FitGbdt, MatchesNaiveBoostingLoop) {
  // Residual trees fit independently with fit_regression_tree give the same model.
  Rng rng(213);
  const auto m = FeatureMatrix::from_rows(random_rows(rng, 150, 3, 0), random_targets(rng, 150, 0));
  const auto p = params(7, 3, 0.35, 12);
  const auto model = fit_gbdt(m, p);
  std::vector<double> fitted(m.rows(), model.initial_prediction), residual(m.rows());
  ASSERT_EQ(model.trees.size(), 12u);
  for (int j = 0; j < p.num_trees; ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) residual[i] = m.y[i] - fitted[i];
    const auto tree = fit_regression_tree(m, residual, p.num_leaves, p.min_leaf_instances);
    EXPECT_EQ(tree, model.trees[static_cast<std::size_t>(j)]) << "stage " << j;
    for (std::size_t i = 0; i < m.rows(); ++i) fitted[i] += p.learning_rate * tree.predict(m.row(i));
  }
}

TEST(FitForest, SingleTreeWithoutBootstrapIsPlainTree) {
  Rng rng(217);
  const auto m = FeatureMatrix::from_rows(random_rows(rng, 100, 3, 0), random_targets(rng, 100, 0));
  ForestParams fp{1, 9, 2, false};
  const auto forest = fit_forest(m, fp, 5);
  ASSERT_EQ(forest.tree_count(), 1u);
  EXPECT_EQ(forest.trees[0], fit_regression_tree(m, 9, 2));
}

TEST(FitForest, PredictsTheMeanOfItsTrees) {
  ForestModel f;
  f.trees.emplace_back(std::vector<TreeNode>{TreeNode{-1, 0.0, -1, -1, 4.0, 1}}, 1);
  f.trees.emplace_back(std::vector<TreeNode>{TreeNode{-1, 0.0, -1, -1, 6.0, 1}}, 1);
  EXPECT_EQ(predict_forest(f, std::vector<double>{0.3}), 5.0);
  EXPECT_EQ(kind_of([] { predict_forest(ForestModel{}, std::vector<double>{0.3}); }), ErrorKind::MalformedModel);
}

TEST(FitForest, SameSeedIsBitwiseIdentical) {
  Rng rng(219);
  const auto m = FeatureMatrix::from_rows(random_rows(rng, 200, 3, 0), random_targets(rng, 200, 0));
  ForestParams fp{6, 32, 1, true};
  const auto a = fit_forest(m, fp, 99);
  const auto b = fit_forest(m, fp, 99);
  EXPECT_EQ(a, b);
  EXPECT_EQ(predict_forest(a, m), predict_forest(b, m));
  EXPECT_NE(fit_forest(m, fp, 100), a);
}

TEST(FitForest, TreesMatchOracleOnTheirBootstrapSamples) {
  Rng rng(223);
  const std::size_t n = 120;
  const auto x = random_rows(rng, n, 3, 0);
  const auto y = random_targets(rng, n, 0);
  const auto m = FeatureMatrix::from_rows(x, y);
  ForestParams fp{4, 10, 2, true};
  const auto forest = fit_forest(m, fp, 31);
  for (std::size_t t = 0; t < forest.trees.size(); ++t) {
    const auto rows = bootstrap_rows(n, 31, t);
    EXPECT_EQ(forest.trees[t].nodes(), brute_force_tree(x, y, rows, 10, 2)) << "tree " << t;
  }
}

TEST(BootstrapRows, DeterministicDrawsWithReplacement) {
  const auto a = bootstrap_rows(500, 7, 3);
  EXPECT_EQ(a, bootstrap_rows(500, 7, 3));
  EXPECT_NE(a, bootstrap_rows(500, 7, 4));
  EXPECT_EQ(a.size(), 500u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_LT(a.back(), 500u);
  EXPECT_NE(std::adjacent_find(a.begin(), a.end()), a.end());  // some row drawn twice
}
