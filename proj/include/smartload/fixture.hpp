#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "smartload/csv.hpp"
#include "smartload/error.hpp"

namespace smartload {

/// One published tuning result: the four hyperparameters and five training-set
/// error measures, tagged with the size of the sweep it belongs to.
struct FixtureRow {
  int combinations = 0;
  int num_leaves = 0;
  int min_leaf_instances = 0;
  double learning_rate = 0.0;
  int num_trees = 0;
  double mae = 0.0;
  double rmse = 0.0;
  double rae = 0.0;
  double rse = 0.0;
  double cod = 0.0;
};

struct FixtureTableReport {
  int combinations = 0;
  std::size_t rows = 0;
  double mae_over_rae = 0.0;   // mean absolute deviation of the scored data
  double mae_over_rae_max_rel_dev = 0.0;
  double rmse2_over_rse = 0.0;  // variance of the scored data
  double rmse2_over_rse_max_rel_dev = 0.0;
  double cod_plus_rse_max_abs_dev = 0.0;
  bool ok = true;
};

struct FixtureReport {
  std::vector<FixtureTableReport> tables;
  std::size_t total_rows = 0;
  bool ok = true;
};

inline constexpr double kCodRseTolerance = 1e-5;
inline constexpr double kTableConstantRelTolerance = 1e-3;

inline std::vector<FixtureRow> parse_fixture_csv(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  if (!csv::next_record(in, line, line_number)) throw Error(ErrorKind::MalformedHeader, "empty fixture");
  const auto header = csv::split_line(line);
  const std::vector<std::string> expected{"combinations", "num_leaves", "min_leaf_instances", "learning_rate",
                                          "num_trees",    "mae",        "rmse",               "rae",
                                          "rse",          "cod"};
  if (header.size() != expected.size()) throw Error(ErrorKind::MalformedHeader, "fixture needs 10 columns");
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (csv::trim(header[i]) != expected[i]) {
      throw Error(ErrorKind::MalformedHeader, "fixture column " + std::to_string(i) + " should be " + expected[i]);
    }
  }
  std::vector<FixtureRow> rows;
  while (csv::next_record(in, line, line_number)) {
    auto cells = csv::split_line(line);
    if (cells.size() != expected.size()) {
      throw Error(ErrorKind::MalformedHeader, "fixture line " + std::to_string(line_number));
    }
    std::vector<double> v;
    for (const auto& c : cells) {
      auto x = csv::parse_number(c);
      if (!x) throw Error(ErrorKind::UnparseableValue, "fixture line " + std::to_string(line_number) + ": '" + c + "'");
      v.push_back(*x);
    }
    rows.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]), v[3],
                    static_cast<int>(v[4]), v[5], v[6], v[7], v[8], v[9]});
  }
  return rows;
}

inline std::vector<FixtureRow> parse_fixture_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return parse_fixture_csv(in);
}

/// Within one table every row scores the same evaluation data, so mae/rae and
/// rmse^2/rse must be constant and cod + rse must equal 1.
inline FixtureReport check_fixture(const std::vector<FixtureRow>& rows) {
  std::map<int, std::vector<const FixtureRow*>> groups;
  for (const auto& r : rows) groups[r.combinations].push_back(&r);

  FixtureReport report;
  report.total_rows = rows.size();
  for (const auto& [combinations, members] : groups) {
    FixtureTableReport t;
    t.combinations = combinations;
    t.rows = members.size();
    std::vector<double> a, b;
    for (const auto* r : members) {
      a.push_back(r->mae / r->rae);
      b.push_back(r->rmse * r->rmse / r->rse);
      t.cod_plus_rse_max_abs_dev = std::max(t.cod_plus_rse_max_abs_dev, std::abs(r->cod + r->rse - 1.0));
    }
    auto centre = [](const std::vector<double>& v, double& mean, double& dev) {
      mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      dev = 0.0;
      for (double x : v) dev = std::max(dev, std::abs(x - mean) / std::abs(mean));
    };
    centre(a, t.mae_over_rae, t.mae_over_rae_max_rel_dev);
    centre(b, t.rmse2_over_rse, t.rmse2_over_rse_max_rel_dev);
    t.ok = t.cod_plus_rse_max_abs_dev <= kCodRseTolerance && t.mae_over_rae_max_rel_dev <= kTableConstantRelTolerance &&
           t.rmse2_over_rse_max_rel_dev <= kTableConstantRelTolerance && std::isfinite(t.mae_over_rae) &&
           std::isfinite(t.rmse2_over_rse);
    report.ok = report.ok && t.ok;
    report.tables.push_back(t);
  }
  if (rows.empty()) report.ok = false;
  return report;
}

inline FixtureReport validate_fixture(const std::vector<FixtureRow>& rows) {
  auto report = check_fixture(rows);
  if (!report.ok) {
    std::string detail;
    for (const auto& t : report.tables) {
      if (!t.ok) detail += " table " + std::to_string(t.combinations);
    }
    throw Error(ErrorKind::InconsistentFixture, rows.empty() ? "no rows" : "identity violated in" + detail);
  }
  return report;
}

struct NrmseFixtureRow {
  int combinations = 0;
  double nrmse_test = 0.0;
};

inline std::vector<NrmseFixtureRow> parse_nrmse_fixture_csv(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  if (!csv::next_record(in, line, line_number)) throw Error(ErrorKind::MalformedHeader, "empty NRMSE fixture");
  std::vector<NrmseFixtureRow> rows;
  while (csv::next_record(in, line, line_number)) {
    auto cells = csv::split_line(line);
    auto c = cells.size() == 2 ? csv::parse_number(cells[0]) : std::nullopt;
    auto v = cells.size() == 2 ? csv::parse_number(cells[1]) : std::nullopt;
    if (!c || !v) throw Error(ErrorKind::UnparseableValue, "NRMSE fixture line " + std::to_string(line_number));
    rows.push_back({static_cast<int>(*c), *v});
  }
  return rows;
}

}  // namespace smartload
