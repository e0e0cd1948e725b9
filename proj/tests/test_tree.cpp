#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "support.hpp"

using namespace smartload;
using namespace smartload::test;

namespace {

std::string describe(const std::vector<TreeNode>& nodes) {
  std::ostringstream out;
  for (const auto& n : nodes) {
    out << "[f=" << n.feature << " thr=" << n.threshold << " l=" << n.left << " r=" << n.right << " v=" << n.value
        << " n=" << n.count << "] ";
  }
  return out.str();
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

// Mixed columns: some low-cardinality (histogram path), some with many distinct values (presorted path).
std::vector<std::vector<double>> mixed_rows(Rng& rng, std::size_t n, std::size_t p) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(p));
  for (std::size_t j = 0; j < p; ++j) {
    const int levels = j % 2 == 0 ? static_cast<int>(rng.uniform_int(2, 10)) : 0;
    for (auto& r : rows) r[j] = levels > 0 ? static_cast<double>(rng.uniform_int(0, levels - 1)) : rng.uniform01();
  }
  return rows;
}

}  // namespace

TEST(SplitThreshold, MidpointWithFallback) {
  EXPECT_EQ(split_threshold(0.0, 1.0), 0.5);
  EXPECT_EQ(split_threshold(2.0, 3.0), 2.5);
  const double a = 1.0, b = std::nextafter(1.0, 2.0);
  EXPECT_EQ(split_threshold(a, b), a);
}

TEST(BestSplit, Examples) {
  auto m = FeatureMatrix::from_rows({{0.0}, {1.0}}, {0.0, 10.0});
  auto s = best_split(m, 1);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->feature, 0u);
  EXPECT_EQ(s->threshold, 0.5);
  EXPECT_DOUBLE_EQ(s->sse_reduction, 50.0);

  EXPECT_FALSE(best_split(FeatureMatrix::from_rows({{0.0}, {1.0}, {2.0}}, {3.0, 3.0, 3.0}), 1));
  EXPECT_FALSE(best_split(FeatureMatrix::from_rows({{0.0}, {1.0}, {2.0}, {3.0}}, {0.0, 1.0, 5.0, 9.0}), 3));
}

TEST(BestSplit, TiesGoToLowestFeatureThenThreshold) {
  // Features 0 and 1 are identical, so every cut ties across them.
  auto m = FeatureMatrix::from_rows({{0, 0}, {1, 1}, {2, 2}, {3, 3}}, {0, 5, 5, 10});
  auto s = best_split(m, 1);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->feature, 0u);
  // Cuts after 1 and after 3 rows tie (gain 100/3 each); the lower threshold wins.
  EXPECT_EQ(s->threshold, 0.5);
}

TEST(BestSplit, MatchesBruteForce) {
  Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 40));
    const auto p = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const int levels = trial % 3 == 0 ? 0 : static_cast<int>(rng.uniform_int(2, 5));
    const auto x = random_rows(rng, n, p, levels);
    const auto y = random_targets(rng, n, trial % 2 ? 6 : 0);
    const auto min_leaf = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const auto m = FeatureMatrix::from_rows(x, y);
    const auto got = best_split(m, min_leaf);
    const auto want = brute_force_split(x, y, all_rows(n), min_leaf);
    ASSERT_EQ(got.has_value(), want.has_value()) << "trial " << trial;
    if (!got) continue;
    EXPECT_EQ(got->feature, want->feature) << "trial " << trial;
    EXPECT_EQ(got->threshold, want->threshold) << "trial " << trial;
    EXPECT_NEAR(got->sse_reduction, want->gain, 1e-9 * (1.0 + want->gain));
  }
}

TEST(FitRegressionTree, Examples) {
  const auto two = FeatureMatrix::from_rows({{0.0}, {1.0}}, {0.0, 10.0});
  auto stump = fit_regression_tree(two, 1, 1);
  EXPECT_EQ(stump.leaf_count(), 1u);
  EXPECT_EQ(stump.predict(std::vector<double>{0.0}), 5.0);

  stump = fit_regression_tree(two, 2, 1);
  EXPECT_EQ(stump.leaf_count(), 2u);
  EXPECT_EQ(stump.predict(std::vector<double>{0.0}), 0.0);
  EXPECT_EQ(stump.predict(std::vector<double>{1.0}), 10.0);

  // Two clusters of four points each.
  const auto clusters =
      FeatureMatrix::from_rows({{0.1}, {0.2}, {0.3}, {0.4}, {5.1}, {5.2}, {5.3}, {5.4}}, {1, 2, 3, 2, 10, 12, 11, 11});
  auto tree = fit_regression_tree(clusters, 2, 1);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(tree.predict(clusters.row(i)), 2.0);
  for (std::size_t i = 4; i < 8; ++i) EXPECT_EQ(tree.predict(clusters.row(i)), 11.0);
}

TEST(FitRegressionTree, StumpMatchesExhaustiveEnumeration) {
  Rng rng(103);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const auto p = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const auto x = random_rows(rng, n, p, trial % 2 ? 3 : 0);
    const auto y = random_targets(rng, n, trial % 4 < 2 ? 4 : 0);
    const auto min_leaf = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const auto tree = fit_regression_tree(FeatureMatrix::from_rows(x, y), 2, static_cast<int>(min_leaf));
    const auto want = brute_force_tree(x, y, all_rows(n), 2, min_leaf);
    EXPECT_EQ(tree.nodes(), want) << "trial " << trial << "\n got  " << describe(tree.nodes()) << "\n want "
                                  << describe(want);
  }
}

TEST(FitRegressionTree, BestFirstMatchesOracle) {
  Rng rng(107);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(20, 300));
    const auto p = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto x = mixed_rows(rng, n, p);
    const auto y = random_targets(rng, n, 0);
    const auto leaves = static_cast<std::size_t>(rng.uniform_int(1, 24));
    const auto min_leaf = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const auto tree = fit_regression_tree(FeatureMatrix::from_rows(x, y), static_cast<int>(leaves),
                                          static_cast<int>(min_leaf));
    const auto want = brute_force_tree(x, y, all_rows(n), leaves, min_leaf);
    EXPECT_EQ(tree.nodes(), want) << "trial " << trial << "\n got  " << describe(tree.nodes()) << "\n want "
                                  << describe(want);
  }
}

TEST(FitRegressionTree, BootstrapRowsMatchOracle) {
  // Duplicate rows exercise the multiset path of the presorted columns.
  Rng rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(80, 250));
    const auto x = mixed_rows(rng, n, 4);
    const auto y = random_targets(rng, n, 0);
    const auto m = FeatureMatrix::from_rows(x, y);
    const auto rows = bootstrap_rows(n, 77, static_cast<std::size_t>(trial));
    const auto leaves = static_cast<std::size_t>(rng.uniform_int(2, 20));
    const auto min_leaf = static_cast<std::size_t>(rng.uniform_int(1, 5));

    detail::ColumnIndex index(m);
    detail::TreeBuilder builder(index, min_leaf);
    auto work = rows;
    const auto tree = builder.grow(m.y, work, leaves);
    const auto want = brute_force_tree(x, y, rows, leaves, min_leaf);
    EXPECT_EQ(tree.nodes(), want) << "trial " << trial;

    // The builder is reusable: a second grow on the same index gives the same tree.
    work = rows;
    EXPECT_EQ(builder.grow(m.y, work, leaves), tree);
  }
}

TEST(FitRegressionTree, PresortedColumnsAreExercised) {
  Rng rng(113);
  const auto x = mixed_rows(rng, 200, 2);
  detail::ColumnIndex index(FeatureMatrix::from_rows(x, std::vector<double>(200, 0.0)));
  EXPECT_FALSE(index.is_presorted(0));
  EXPECT_TRUE(index.is_presorted(1));
}

TEST(FitRegressionTree, StructuralInvariants) {
  Rng rng(127);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(10, 200));
    const auto x = mixed_rows(rng, n, 3);
    const auto y = random_targets(rng, n, 0);
    const int leaves = static_cast<int>(rng.uniform_int(1, 30));
    const int min_leaf = static_cast<int>(rng.uniform_int(1, 10));
    const auto m = FeatureMatrix::from_rows(x, y);
    const auto tree = fit_regression_tree(m, leaves, min_leaf);
    EXPECT_LE(tree.leaf_count(), static_cast<std::size_t>(leaves));
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    std::vector<std::size_t> hits(tree.nodes().size(), 0);
    for (std::size_t i = 0; i < n; ++i) ++hits[tree.leaf_index(m.row(i))];
    for (std::size_t k = 0; k < tree.nodes().size(); ++k) {
      const auto& node = tree.nodes()[k];
      if (!node.is_leaf()) continue;
      EXPECT_EQ(hits[k], node.count);
      if (tree.leaf_count() > 1) {
        EXPECT_GE(node.count, static_cast<std::size_t>(min_leaf));
      }
    }
    // Arbitrary points, including outside the training range, land in exactly one leaf.
    for (int k = 0; k < 200; ++k) {
      std::vector<double> q{rng.uniform01() * 12 - 1, rng.uniform01() * 3 - 1, rng.uniform01() * 12 - 1};
      const auto leaf = tree.leaf_index(q);
      ASSERT_LT(leaf, tree.nodes().size());
      EXPECT_TRUE(tree.nodes()[leaf].is_leaf());
      const double v = tree.predict(q);
      EXPECT_GE(v, *lo);
      EXPECT_LE(v, *hi);
    }
  }
}

TEST(PredictTree, Examples) {
  RegressionTree single({TreeNode{-1, 0.0, -1, -1, 5.0, 1}}, 2);
  EXPECT_EQ(predict_tree(single, std::vector<double>{1.0, 2.0}), 5.0);

  RegressionTree stump({TreeNode{0, 0.5, 1, 2, 0.0, 2}, TreeNode{-1, 0.0, -1, -1, 0.0, 1},
                        TreeNode{-1, 0.0, -1, -1, 10.0, 1}},
                       2);
  EXPECT_EQ(predict_tree(stump, std::vector<double>{0.2, 7.0}), 0.0);
  EXPECT_EQ(predict_tree(stump, std::vector<double>{0.5, 7.0}), 0.0);
  EXPECT_EQ(predict_tree(stump, std::vector<double>{0.6, 7.0}), 10.0);
  EXPECT_EQ(kind_of([&] { predict_tree(stump, std::vector<double>{0.2}); }), ErrorKind::DimensionMismatch);
}

TEST(RegressionTree, RejectsMalformedNodes) {
  EXPECT_EQ(kind_of([] { RegressionTree({}, 1); }), ErrorKind::MalformedModel);
  EXPECT_EQ(kind_of([] { RegressionTree({TreeNode{0, 0.5, 0, 0, 0.0, 0}}, 1); }), ErrorKind::MalformedModel);
  EXPECT_EQ(kind_of([] { RegressionTree({TreeNode{3, 0.5, 1, 2, 0.0, 0}, TreeNode{}, TreeNode{}}, 1); }),
            ErrorKind::MalformedModel);
}

TEST(FitRegressionTree, Errors) {
  const auto m = FeatureMatrix::from_rows({{0.0}, {1.0}}, {0.0, 1.0});
  EXPECT_EQ(kind_of([&] { fit_regression_tree(m, 0, 1); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { fit_regression_tree(m, std::vector<double>{1.0}, 2, 1); }), ErrorKind::LengthMismatch);
  EXPECT_EQ(kind_of([] { fit_regression_tree(FeatureMatrix{}, 2, 1); }), ErrorKind::EmptyMatrix);
}
