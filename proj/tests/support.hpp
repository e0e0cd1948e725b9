#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "smartload/cli.hpp"
#include "smartload/smartload.hpp"

namespace smartload::test {

/// Kind of the Error thrown by `f`; nullopt when nothing is thrown.
inline std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

/// `levels` > 0 draws integers in [0, levels) so ties are common; otherwise uniform reals.
inline std::vector<std::vector<double>> random_rows(Rng& rng, std::size_t n, std::size_t p, int levels) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(p));
  for (auto& r : rows) {
    for (auto& v : r) v = levels > 0 ? static_cast<double>(rng.uniform_int(0, levels - 1)) : rng.uniform01();
  }
  return rows;
}

inline std::vector<double> random_targets(Rng& rng, std::size_t n, int levels) {
  std::vector<double> y(n);
  for (auto& v : y) v = levels > 0 ? static_cast<double>(rng.uniform_int(0, levels - 1)) : rng.normal() * 3.0;
  return y;
}

inline double two_pass_sse(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  const double mean = s / static_cast<double>(v.size());
  double sse = 0.0;
  for (double x : v) sse += (x - mean) * (x - mean);
  return sse;
}

struct OracleSplit {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

/// Exhaustive search: every feature, every cut between consecutive distinct node
/// values, gain from directly recomputed SSEs. A candidate wins only if it beats
/// the incumbent by more than the tie tolerance, so earlier features and lower
/// thresholds keep ties.
inline std::optional<OracleSplit> brute_force_split(const std::vector<std::vector<double>>& x,
                                                    const std::vector<double>& t,
                                                    const std::vector<std::size_t>& rows, std::size_t min_leaf) {
  const std::size_t n = rows.size();
  if (n < 2 || n < 2 * min_leaf) return std::nullopt;
  std::vector<double> all;
  for (auto r : rows) all.push_back(t[r]);
  double sum = 0.0;
  for (double v : all) sum += v;
  const double mean = sum / static_cast<double>(n);
  const double sse = two_pass_sse(all);
  const double tol = split_tolerance(sse, mean, n);
  if (!(sse > tol)) return std::nullopt;

  std::optional<OracleSplit> best;
  double best_gain = 0.0;
  for (std::size_t f = 0; f < x.front().size(); ++f) {
    std::vector<double> values;
    for (auto r : rows) values.push_back(x[r][f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      std::vector<double> left, right;
      for (auto r : rows) (x[r][f] <= values[k] ? left : right).push_back(t[r]);
      if (left.size() < min_leaf || right.size() < min_leaf) continue;
      const double gain = sse - two_pass_sse(left) - two_pass_sse(right);
      if (gain > best_gain + tol) {
        best_gain = gain;
        best = OracleSplit{f, split_threshold(values[k], values[k + 1]), gain};
      }
    }
  }
  return best;
}

/// Best-first reference tree in the same node layout as the library: children
/// are appended in (left, right) order when their parent is split.
inline std::vector<TreeNode> brute_force_tree(const std::vector<std::vector<double>>& x, const std::vector<double>& t,
                                              std::vector<std::size_t> rows, std::size_t num_leaves,
                                              std::size_t min_leaf) {
  struct Open {
    std::size_t node;
    std::vector<std::size_t> rows;
    std::optional<OracleSplit> split;
  };
  std::vector<TreeNode> nodes;
  std::vector<Open> open;
  auto add_leaf = [&](std::vector<std::size_t> r, bool searchable) {
    TreeNode leaf;
    double s = 0.0;
    for (auto i : r) s += t[i];
    leaf.value = s / static_cast<double>(r.size());
    leaf.count = r.size();
    nodes.push_back(leaf);
    auto split = searchable ? brute_force_split(x, t, r, min_leaf) : std::nullopt;
    open.push_back({nodes.size() - 1, std::move(r), split});
  };
  add_leaf(std::move(rows), num_leaves > 1);
  std::size_t leaves = 1;
  while (leaves < num_leaves) {
    std::size_t pick = open.size();
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (!open[i].split) continue;
      if (pick == open.size() || open[i].split->gain > open[pick].split->gain ||
          (open[i].split->gain == open[pick].split->gain && open[i].node < open[pick].node)) {
        pick = i;
      }
    }
    if (pick == open.size()) break;
    Open cur = open[pick];
    open.erase(open.begin() + static_cast<long>(pick));
    std::vector<std::size_t> left, right;
    for (auto r : cur.rows) (x[r][cur.split->feature] <= cur.split->threshold ? left : right).push_back(r);
    auto& parent = nodes[cur.node];
    parent.feature = static_cast<int>(cur.split->feature);
    parent.threshold = cur.split->threshold;
    parent.left = static_cast<int>(nodes.size());
    parent.right = static_cast<int>(nodes.size() + 1);
    ++leaves;
    const bool search = leaves < num_leaves;
    add_leaf(std::move(left), search);
    add_leaf(std::move(right), search);
  }
  return nodes;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("smartload_" + std::to_string(::getpid()) + "_" + std::to_string(stamp) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

/// Runs the CLI in-process, returning the exit code and capturing both streams.
struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

/// Meter and holiday CSVs from the synthetic generator.
inline void write_synthetic(const TempDir& dir, const SyntheticOptions& opt) {
  const auto data = generate_synthetic(opt);
  std::ostringstream meter, holidays;
  write_wide_csv(meter, data.records);
  write_holiday_csv(holidays, data.calendar);
  write_file(dir.path() / "meter.csv", meter.str());
  write_file(dir.path() / "holidays.csv", holidays.str());
}

}  // namespace smartload::test
