#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "smartload/error.hpp"
#include "smartload/featurize.hpp"

namespace smartload {

/// The four boosting knobs: leaf budget, minimum rows per leaf, shrinkage, stages.
struct HyperParams {
  int num_leaves = 20;
  int min_leaf_instances = 10;
  double learning_rate = 0.2;
  int num_trees = 100;

  void validate() const {
    if (num_leaves < 1) throw Error(ErrorKind::InvalidArgument, "num_leaves must be >= 1");
    if (min_leaf_instances < 1) throw Error(ErrorKind::InvalidArgument, "min_leaf_instances must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "learning_rate must lie in (0, 1]");
    }
    if (num_trees < 1) throw Error(ErrorKind::InvalidArgument, "num_trees must be >= 1");
  }

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;
  double sse_reduction = 0.0;
};

// Internal nodes carry (feature, threshold) and children; leaves carry the value.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
  std::size_t count = 0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class RegressionTree {
 public:
  RegressionTree() = default;
  RegressionTree(std::vector<TreeNode> nodes, std::size_t feature_count)
      : nodes_(std::move(nodes)), feature_count_(feature_count) {
    validate();
  }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t feature_count() const { return feature_count_; }

  std::size_t leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
  }

  /// Index of the leaf accepting x; left iff x[feature] <= threshold.
  std::size_t leaf_index(std::span<const double> x) const {
    if (x.size() != feature_count_) {
      throw Error(ErrorKind::DimensionMismatch,
                  "expected " + std::to_string(feature_count_) + " features, got " + std::to_string(x.size()));
    }
    std::size_t i = 0;
    while (!nodes_[i].is_leaf()) {
      const auto& n = nodes_[i];
      i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
    }
    return i;
  }

  double predict(std::span<const double> x) const { return nodes_[leaf_index(x)].value; }

  friend bool operator==(const RegressionTree&, const RegressionTree&) = default;

 private:
  void validate() const {
    if (nodes_.empty()) throw Error(ErrorKind::MalformedModel, "tree has no nodes");
    const auto n = static_cast<int>(nodes_.size());
    for (int i = 0; i < n; ++i) {
      const auto& node = nodes_[static_cast<std::size_t>(i)];
      if (node.is_leaf()) continue;
      // Children must come after their parent so the descent terminates.
      if (static_cast<std::size_t>(node.feature) >= feature_count_ || node.left <= i || node.right <= i ||
          node.left >= n || node.right >= n) {
        throw Error(ErrorKind::MalformedModel, "node " + std::to_string(i) + " is inconsistent");
      }
    }
  }

  std::vector<TreeNode> nodes_{TreeNode{}};
  std::size_t feature_count_ = 0;
};

inline double predict_tree(const RegressionTree& tree, std::span<const double> x) { return tree.predict(x); }

// Split gains closer than this are ties: kSplitRelTol * SSE(node) plus a floor
// for the rounding of centred targets, n * (kSplitAbsTol * mean)^2.
inline constexpr double kSplitRelTol = 1e-10;
inline constexpr double kSplitAbsTol = 1e-14;

inline double split_tolerance(double node_sse, double mean, std::size_t n) {
  return kSplitRelTol * node_sse + static_cast<double>(n) * (kSplitAbsTol * mean) * (kSplitAbsTol * mean);
}

/// Midpoint of two consecutive distinct values, falling back to the lower one when
/// the midpoint rounds up onto the upper value.
inline double split_threshold(double lower, double upper) {
  const double mid = lower + (upper - lower) / 2.0;
  return mid < upper ? mid : lower;
}

namespace detail {

/// Per-feature sorted distinct values and the rank of every row's value. Split search
/// works on ranks, which is lossless: every distinct value keeps its own bin.
///
/// Low-cardinality features are searched through a flat histogram (bin = offset +
/// rank). Features with more than kPresortMinDistinct values keep a row order
/// sorted by value instead, since their histograms would be mostly empty.
class ColumnIndex {
 public:
  static constexpr std::size_t kPresortMinDistinct = 64;

  explicit ColumnIndex(const FeatureMatrix& m)
      : rows_(m.rows()), distinct_(m.cols()), rank_(m.cols()), order_(m.cols()), offset_(m.cols(), 0) {
    std::vector<std::pair<double, std::uint32_t>> column(rows_);
    for (std::size_t f = 0; f < m.cols(); ++f) {
      for (std::size_t i = 0; i < rows_; ++i) column[i] = {m.at(i, f), static_cast<std::uint32_t>(i)};
      std::sort(column.begin(), column.end());
      auto& ranks = rank_[f];
      auto& values = distinct_[f];
      ranks.resize(rows_);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == 0 || column[i].first != column[i - 1].first) values.push_back(column[i].first);
        ranks[column[i].second] = static_cast<std::uint32_t>(values.size() - 1);
      }
      if (values.size() > kPresortMinDistinct) {
        auto& order = order_[f];
        order.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) order[i] = column[i].second;
        presorted_.push_back(f);
      } else {
        offset_[f] = total_bins_;
        total_bins_ += values.size();
        binned_.push_back(f);
      }
    }
    // Each binned feature's most frequent bin is left implicit: rows only list their
    // other bins, and histograms recover the implicit one from the node totals.
    implicit_.resize(binned_.size());
    for (std::size_t k = 0; k < binned_.size(); ++k) {
      const auto f = binned_[k];
      std::vector<std::size_t> counts(distinct_[f].size(), 0);
      for (auto r : rank_[f]) ++counts[r];
      implicit_[k] = static_cast<std::uint32_t>(
          offset_[f] + static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin()));
    }
    row_start_.assign(rows_ + 1, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < binned_.size(); ++k) {
        const auto bin = static_cast<std::uint32_t>(offset_[binned_[k]] + rank_[binned_[k]][i]);
        if (bin != implicit_[k]) bins_.push_back(bin);
      }
      row_start_[i + 1] = bins_.size();
    }
  }

  std::size_t features() const { return distinct_.size(); }
  std::size_t rows() const { return rows_; }
  const std::vector<double>& distinct(std::size_t f) const { return distinct_[f]; }
  const std::vector<std::uint32_t>& ranks(std::size_t f) const { return rank_[f]; }

  bool is_presorted(std::size_t f) const { return !order_[f].empty(); }
  const std::vector<std::size_t>& presorted() const { return presorted_; }
  /// Row ids by ascending (value, row) for a presorted feature.
  const std::vector<std::uint32_t>& order(std::size_t f) const { return order_[f]; }

  const std::vector<std::size_t>& binned() const { return binned_; }
  std::size_t offset(std::size_t f) const { return offset_[f]; }
  std::size_t total_bins() const { return total_bins_; }
  /// Flat bin ids of row i, skipping bins that are implicit.
  std::span<const std::uint32_t> row_bins(std::size_t i) const {
    return {bins_.data() + row_start_[i], row_start_[i + 1] - row_start_[i]};
  }
  /// Implicit flat bin of the k-th binned feature.
  std::uint32_t implicit_bin(std::size_t k) const { return implicit_[k]; }

 private:
  std::size_t rows_;
  std::vector<std::vector<double>> distinct_;
  std::vector<std::vector<std::uint32_t>> rank_;
  std::vector<std::vector<std::uint32_t>> order_;
  std::vector<std::size_t> presorted_;
  std::vector<std::size_t> binned_;
  std::vector<std::size_t> offset_;
  std::size_t total_bins_ = 0;
  std::vector<std::uint32_t> implicit_;
  std::vector<std::size_t> row_start_;
  std::vector<std::uint32_t> bins_;
};

/// Raw target sums and row counts over the flat bins of the binned features.
struct BinHistogram {
  std::vector<double> sum;
  std::vector<std::uint32_t> count;
};

/// One entry of a presorted feature's row order, with the row's rank inlined.
struct RankedRow {
  std::uint32_t rank;
  std::uint32_t row;
};

struct SplitCandidate {
  std::size_t feature = 0;
  std::uint32_t cut_rank = 0;  // rows with rank <= cut_rank go left
  double threshold = 0.0;
  double gain = 0.0;
};

class SplitFinder {
 public:
  SplitFinder(const ColumnIndex& index, std::span<const double> targets, std::size_t min_leaf)
      : index_(index), targets_(targets), min_leaf_(std::max<std::size_t>(min_leaf, 1)) {}

  void set_targets(std::span<const double> targets) { targets_ = targets; }

  /// A node can be split at all only with two admissible children.
  bool splittable(std::size_t n) const { return n >= 2 && n >= 2 * min_leaf_; }

  void accumulate(std::span<const std::size_t> rows, BinHistogram& h) const {
    h.sum.assign(index_.total_bins(), 0.0);
    h.count.assign(index_.total_bins(), 0);
    double total = 0.0;
    for (auto r : rows) {
      const double t = targets_[r];
      total += t;
      for (auto b : index_.row_bins(r)) {
        h.sum[b] += t;
        ++h.count[b];
      }
    }
    const auto& binned = index_.binned();
    for (std::size_t k = 0; k < binned.size(); ++k) {
      const std::size_t off = index_.offset(binned[k]), end = off + index_.distinct(binned[k]).size();
      const std::uint32_t implicit = index_.implicit_bin(k);
      double s = total;
      std::size_t c = rows.size();
      for (std::size_t b = off; b < end; ++b) {
        if (b == implicit) continue;
        s -= h.sum[b];
        c -= h.count[b];
      }
      h.sum[implicit] = s;
      h.count[implicit] = static_cast<std::uint32_t>(c);
    }
  }

  /// parent -= child, leaving the sibling's histogram in `parent`.
  static void subtract(BinHistogram& parent, const BinHistogram& child) {
    for (std::size_t i = 0; i < parent.sum.size(); ++i) {
      parent.sum[i] -= child.sum[i];
      parent.count[i] -= child.count[i];
    }
  }

  /// Best admissible split of `rows`. `hist`, when given, must describe exactly
  /// `rows`; `sorted[f]`, when non-empty, holds the same rows ordered by feature f.
  /// Anything not supplied is computed here.
  std::optional<SplitCandidate> find(std::span<const std::size_t> rows, const BinHistogram* hist = nullptr,
                                     std::span<const std::span<const RankedRow>> sorted = {}) {
    const std::size_t n = rows.size();
    if (!splittable(n)) return std::nullopt;
    double sum = 0.0;
    for (auto r : rows) sum += targets_[r];
    const double mean = sum / static_cast<double>(n);
    double sse = 0.0, csum = 0.0;
    for (auto r : rows) {
      const double c = targets_[r] - mean;
      sse += c * c;
      csum += c;
    }
    const double tol = split_tolerance(sse, mean, n);
    if (!(sse > tol)) return std::nullopt;
    if (!hist) {
      accumulate(rows, scratch_);
      hist = &scratch_;
    }

    std::optional<SplitCandidate> best;
    double best_gain = 0.0;
    const double base = csum * csum / static_cast<double>(n);

    for (std::size_t f = 0; f < index_.features(); ++f) {
      const auto& distinct = index_.distinct(f);
      if (distinct.size() < 2) continue;
      const auto& ranks = index_.ranks(f);

      // Visits occupied bins in ascending rank order.
      std::size_t left_n = 0;
      double left_s = 0.0;
      std::int64_t prev = -1;
      auto visit = [&](std::uint32_t bin, double bin_sum, std::size_t bin_count) {
        if (prev >= 0 && left_n >= min_leaf_ && n - left_n >= min_leaf_) {
          const double right_s = csum - left_s;
          const double gain = left_s * left_s / static_cast<double>(left_n) +
                              right_s * right_s / static_cast<double>(n - left_n) - base;
          if (gain > best_gain + tol) {
            best_gain = gain;
            best = SplitCandidate{f, static_cast<std::uint32_t>(prev),
                                  split_threshold(distinct[static_cast<std::size_t>(prev)], distinct[bin]), gain};
          }
        }
        left_n += bin_count;
        left_s += bin_sum;
        prev = bin;
      };

      if (!index_.is_presorted(f)) {
        const std::size_t off = index_.offset(f);
        for (std::uint32_t b = 0; b < distinct.size(); ++b) {
          const auto c = hist->count[off + b];
          if (c > 0) visit(b, hist->sum[off + b] - static_cast<double>(c) * mean, c);
          if (n - left_n < min_leaf_) break;
        }
      } else if (f < sorted.size() && !sorted[f].empty()) {
        const auto seg = sorted[f];
        for (std::size_t i = 0; i < seg.size();) {
          const auto bin = seg[i].rank;
          std::size_t j = i;
          double s = 0.0;
          while (j < seg.size() && seg[j].rank == bin) s += targets_[seg[j++].row] - mean;
          visit(bin, s, j - i);
          if (n - left_n < min_leaf_) break;
          i = j;
        }
      } else {
        pairs_.clear();
        for (auto r : rows) pairs_.emplace_back(ranks[r], targets_[r] - mean);
        std::sort(pairs_.begin(), pairs_.end());
        for (std::size_t i = 0; i < pairs_.size();) {
          std::size_t j = i;
          double s = 0.0;
          while (j < pairs_.size() && pairs_[j].first == pairs_[i].first) s += pairs_[j++].second;
          visit(pairs_[i].first, s, j - i);
          if (n - left_n < min_leaf_) break;
          i = j;
        }
      }
    }
    return best;
  }

 private:
  const ColumnIndex& index_;
  std::span<const double> targets_;
  std::size_t min_leaf_;
  BinHistogram scratch_;
  std::vector<std::pair<std::uint32_t, double>> pairs_;
};

struct LeafRange {
  std::size_t node = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

inline double range_mean(std::span<const double> targets, std::span<const std::size_t> rows) {
  double s = 0.0;
  for (auto r : rows) s += targets[r];
  return s / static_cast<double>(rows.size());
}

/// Best-first growth: always split the open leaf with the largest gain (earliest
/// node on ties) until the leaf budget is spent or nothing is admissible.
/// Reusable across trees on one index so its buffers are allocated once.
class TreeBuilder {
 public:
  TreeBuilder(const ColumnIndex& index, std::size_t min_leaf)
      : index_(index), finder_(index, {}, min_leaf), sorted_(index.features()), views_(index.features()) {}

  /// `rows` is reordered so each leaf owns a contiguous, order-preserving range.
  RegressionTree grow(std::span<const double> targets, std::vector<std::size_t>& rows, std::size_t num_leaves,
                      std::vector<LeafRange>* leaves_out = nullptr) {
    if (rows.empty()) throw Error(ErrorKind::EmptyMatrix, "cannot fit a tree on zero rows");
    finder_.set_targets(targets);
    init_sorted(rows);
    std::vector<TreeNode> nodes;

    struct Open {
      LeafRange range;
      std::optional<SplitCandidate> split;
      int hist = -1;  // kept while the leaf may still be split
    };
    std::vector<Open> open;
    auto span_of = [&](std::size_t begin, std::size_t end) {
      return std::span<const std::size_t>(rows.data() + begin, end - begin);
    };
    auto make_leaf = [&](std::size_t begin, std::size_t end, int hist) {
      const auto span = span_of(begin, end);
      TreeNode leaf;
      leaf.value = range_mean(targets, span);
      leaf.count = span.size();
      nodes.push_back(leaf);
      std::optional<SplitCandidate> split;
      if (hist >= 0) {
        for (auto f : index_.presorted()) views_[f] = {sorted_[f].data() + begin, end - begin};
        split = finder_.find(span, &pool_[static_cast<std::size_t>(hist)], views_);
        if (!split) release(hist), hist = -1;
      }
      open.push_back({{nodes.size() - 1, begin, end}, split, hist});
    };

    int root_hist = -1;
    if (num_leaves > 1 && finder_.splittable(rows.size())) {
      root_hist = acquire();
      finder_.accumulate(rows, pool_[static_cast<std::size_t>(root_hist)]);
    }
    make_leaf(0, rows.size(), root_hist);

    std::size_t leaves = 1;
    while (leaves < num_leaves) {
      std::size_t pick = open.size();
      for (std::size_t i = 0; i < open.size(); ++i) {
        if (!open[i].split) continue;
        if (pick == open.size() || open[i].split->gain > open[pick].split->gain ||
            (open[i].split->gain == open[pick].split->gain && open[i].range.node < open[pick].range.node)) {
          pick = i;
        }
      }
      if (pick == open.size()) break;

      const Open current = open[pick];
      open.erase(open.begin() + static_cast<long>(pick));
      const auto& ranks = index_.ranks(current.split->feature);
      for (std::size_t i = current.range.begin; i < current.range.end; ++i) {
        goes_left_[rows[i]] = ranks[rows[i]] <= current.split->cut_rank;
      }
      const std::size_t write = stable_partition(rows, current.range, [&](std::size_t r) { return goes_left_[r]; });
      for (auto f : index_.presorted()) {
        stable_partition(sorted_[f], current.range, [&](const RankedRow& e) { return goes_left_[e.row]; });
      }

      auto& parent = nodes[current.range.node];
      parent.feature = static_cast<int>(current.split->feature);
      parent.threshold = current.split->threshold;
      parent.left = static_cast<int>(nodes.size());
      parent.right = static_cast<int>(nodes.size() + 1);
      ++leaves;

      // Children are searched only if another split can still be afforded. The
      // smaller child is accumulated; the larger one is the parent minus it.
      int h_left = -1, h_right = -1;
      const std::size_t n_left = write - current.range.begin, n_right = current.range.end - write;
      const bool search = leaves < num_leaves;
      if (search && (finder_.splittable(n_left) || finder_.splittable(n_right))) {
        const bool left_small = n_left <= n_right;
        const auto small = left_small ? span_of(current.range.begin, write) : span_of(write, current.range.end);
        const int h_small = acquire();
        finder_.accumulate(small, pool_[static_cast<std::size_t>(h_small)]);
        SplitFinder::subtract(pool_[static_cast<std::size_t>(current.hist)], pool_[static_cast<std::size_t>(h_small)]);
        h_left = left_small ? h_small : current.hist;
        h_right = left_small ? current.hist : h_small;
        if (!finder_.splittable(n_left)) release(h_left), h_left = -1;
        if (!finder_.splittable(n_right)) release(h_right), h_right = -1;
      } else {
        release(current.hist);
      }
      make_leaf(current.range.begin, write, h_left);
      make_leaf(write, current.range.end, h_right);
    }

    for (const auto& o : open) {
      if (o.hist >= 0) release(o.hist);
    }
    if (leaves_out) {
      leaves_out->clear();
      for (const auto& o : open) leaves_out->push_back(o.range);
    }
    return RegressionTree(std::move(nodes), index_.features());
  }

 private:
  // Restricts each presorted feature's global order to the multiset `rows`.
  void init_sorted(std::span<const std::size_t> rows) {
    goes_left_.resize(index_.rows());
    if (index_.presorted().empty()) return;
    bool identity = rows.size() == index_.rows();
    for (std::size_t i = 0; identity && i < rows.size(); ++i) identity = rows[i] == i;
    if (!identity) {
      multiplicity_.assign(index_.rows(), 0);
      for (auto r : rows) ++multiplicity_[r];
    }
    for (auto f : index_.presorted()) {
      const auto& ranks = index_.ranks(f);
      auto& seg = sorted_[f];
      seg.resize(rows.size());
      std::size_t k = 0;
      for (auto r : index_.order(f)) {
        if (identity) {
          seg[k++] = {ranks[r], r};
        } else {
          for (std::uint32_t c = multiplicity_[r]; c > 0; --c) seg[k++] = {ranks[r], r};
        }
      }
    }
  }

  // Stable within both sides; returns the first index of the right side.
  template <typename T, typename Pred>
  std::size_t stable_partition(std::vector<T>& v, const LeafRange& range, Pred goes_left) {
    auto& buffer = right_buffer<T>();
    if (buffer.size() < range.end - range.begin) buffer.resize(range.end - range.begin);
    std::size_t write = range.begin, right = 0;
    for (std::size_t i = range.begin; i < range.end; ++i) {
      const T e = v[i];
      if (goes_left(e)) {
        v[write++] = e;
      } else {
        buffer[right++] = e;
      }
    }
    std::copy(buffer.begin(), buffer.begin() + static_cast<long>(right), v.begin() + static_cast<long>(write));
    return write;
  }

  template <typename T>
  std::vector<T>& right_buffer() {
    if constexpr (std::is_same_v<T, RankedRow>) {
      return ranked_buffer_;
    } else {
      return row_buffer_;
    }
  }

  int acquire() {
    if (free_.empty()) {
      pool_.emplace_back();
      return static_cast<int>(pool_.size() - 1);
    }
    const int h = free_.back();
    free_.pop_back();
    return h;
  }
  void release(int h) { free_.push_back(h); }

  const ColumnIndex& index_;
  SplitFinder finder_;
  std::vector<std::vector<RankedRow>> sorted_;
  std::vector<std::span<const RankedRow>> views_;
  std::vector<std::uint32_t> multiplicity_;
  std::vector<std::uint8_t> goes_left_;
  std::vector<std::size_t> row_buffer_;
  std::vector<RankedRow> ranked_buffer_;
  std::vector<BinHistogram> pool_;
  std::vector<int> free_;
};

inline RegressionTree grow_tree(const ColumnIndex& index, std::span<const double> targets,
                                std::vector<std::size_t>& rows, std::size_t num_leaves, std::size_t min_leaf,
                                std::vector<LeafRange>* leaves_out = nullptr) {
  TreeBuilder builder(index, min_leaf);
  return builder.grow(targets, rows, num_leaves, leaves_out);
}

}  // namespace detail

/// Least-squares split of `rows` maximising SSE(rows) - SSE(left) - SSE(right).
/// Ties go to the lowest feature index, then the lowest threshold.
inline std::optional<Split> best_split(const FeatureMatrix& m, std::span<const double> targets,
                                       std::span<const std::size_t> rows, std::size_t min_leaf_instances) {
  if (targets.size() != m.rows()) throw Error(ErrorKind::LengthMismatch, "targets vs matrix rows");
  detail::ColumnIndex index(m);
  detail::SplitFinder finder(index, targets, min_leaf_instances);
  auto c = finder.find(rows);
  if (!c) return std::nullopt;
  return Split{c->feature, c->threshold, c->gain};
}

inline std::optional<Split> best_split(const FeatureMatrix& m, std::size_t min_leaf_instances) {
  std::vector<std::size_t> rows(m.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return best_split(m, m.y, rows, min_leaf_instances);
}

inline RegressionTree fit_regression_tree(const FeatureMatrix& m, std::span<const double> targets, int num_leaves,
                                          int min_leaf_instances) {
  if (m.rows() == 0) throw Error(ErrorKind::EmptyMatrix, "empty matrix");
  if (targets.size() != m.rows()) throw Error(ErrorKind::LengthMismatch, "targets vs matrix rows");
  if (num_leaves < 1 || min_leaf_instances < 1) {
    throw Error(ErrorKind::InvalidArgument, "num_leaves and min_leaf_instances must be >= 1");
  }
  detail::ColumnIndex index(m);
  std::vector<std::size_t> rows(m.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return detail::grow_tree(index, targets, rows, static_cast<std::size_t>(num_leaves),
                           static_cast<std::size_t>(min_leaf_instances));
}

inline RegressionTree fit_regression_tree(const FeatureMatrix& m, int num_leaves, int min_leaf_instances) {
  return fit_regression_tree(m, m.y, num_leaves, min_leaf_instances);
}

}  // namespace smartload
