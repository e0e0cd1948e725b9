#pragma once

#include <optional>
#include <vector>

#include "smartload/error.hpp"
#include "smartload/ingest.hpp"

namespace smartload {

/// A maximal block of consecutive missing entries.
struct MissingRun {
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const MissingRun&, const MissingRun&) = default;
};

struct ImputeOptions {
  std::size_t short_gap_threshold = 4;  // slots; 2 hours
};

struct ImputationReport {
  std::size_t total_entries = 0;
  std::size_t missing_before = 0;
  std::size_t filled_linear = 0;
  std::size_t filled_history = 0;
  std::size_t unfilled = 0;
  double missing_fraction_before = 0.0;
};

struct ImputationResult {
  LoadSeries series;
  ImputationReport report;
};

/// Run-length encoding of the missingness mask.
inline std::vector<MissingRun> missingness_runs(const LoadSeries& series) {
  std::vector<MissingRun> runs;
  const auto& v = series.values;
  for (std::size_t i = 0; i < v.size();) {
    if (v[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < v.size() && !v[j]) ++j;
    runs.push_back({i, j - i});
    i = j;
  }
  return runs;
}

inline bool has_flanks(const LoadSeries& series, const MissingRun& run) {
  return run.start > 0 && run.start + run.length < series.size() && series.values[run.start - 1] &&
         series.values[run.start + run.length];
}

/// Straight-line fill between the two present neighbours of the run.
inline std::vector<double> impute_short_gap(const LoadSeries& series, const MissingRun& run,
                                            const ImputeOptions& options = {}) {
  if (run.length == 0 || run.length > options.short_gap_threshold) {
    throw Error(ErrorKind::InvalidArgument, "run length " + std::to_string(run.length) +
                                                " outside short-gap range 1.." +
                                                std::to_string(options.short_gap_threshold));
  }
  if (!has_flanks(series, run)) {
    throw Error(ErrorKind::NoFlank, "run at index " + std::to_string(run.start) + " touches the series boundary");
  }
  const double left = *series.values[run.start - 1];
  const double right = *series.values[run.start + run.length];
  const double span = static_cast<double>(run.length + 1);
  std::vector<double> fills(run.length);
  for (std::size_t k = 0; k < run.length; ++k) {
    fills[k] = left + (right - left) * (static_cast<double>(k + 1) / span);
  }
  return fills;
}

/// Fills each entry with the mean of whichever of (same slot, day-1) and
/// (same slot, week-1) is present, walking the run chronologically so earlier
/// fills feed later ones. Entries with no reference stay nullopt.
inline std::vector<std::optional<double>> impute_long_gap(const LoadSeries& series, const MissingRun& run) {
  std::vector<std::optional<double>> fills(run.length);
  auto lookup = [&](std::size_t idx) -> std::optional<double> {
    if (idx >= run.start && idx < run.start + run.length) return fills[idx - run.start];
    return series.values[idx];
  };
  for (std::size_t k = 0; k < run.length; ++k) {
    const std::size_t i = run.start + k;
    double sum = 0.0;
    int count = 0;
    for (std::size_t back : {std::size_t{kSlotsPerDay}, std::size_t{kSlotsPerWeek}}) {
      if (i < back) continue;
      if (auto ref = lookup(i - back)) {
        sum += *ref;
        ++count;
      }
    }
    if (count > 0) fills[k] = sum / count;
  }
  return fills;
}

/// Two-tier gap repair. Passes repeat until nothing more can be filled, so the
/// result is a fixed point of the policy.
inline ImputationResult impute(const LoadSeries& series, const ImputeOptions& options = {}) {
  ImputationResult result{series, {}};
  auto& rep = result.report;
  auto& work = result.series;
  rep.total_entries = series.size();
  rep.missing_before = series.missing_count();
  rep.missing_fraction_before =
      series.size() == 0 ? 0.0 : static_cast<double>(rep.missing_before) / static_cast<double>(series.size());

  for (bool progress = true; progress;) {
    progress = false;
    for (const auto& run : missingness_runs(work)) {
      if (run.length <= options.short_gap_threshold && has_flanks(work, run)) {
        auto fills = impute_short_gap(work, run, options);
        for (std::size_t k = 0; k < fills.size(); ++k) work.values[run.start + k] = fills[k];
        rep.filled_linear += fills.size();
        progress = true;
        continue;
      }
      auto fills = impute_long_gap(work, run);
      for (std::size_t k = 0; k < fills.size(); ++k) {
        if (!fills[k]) continue;
        work.values[run.start + k] = fills[k];
        ++rep.filled_history;
        progress = true;
      }
    }
  }
  rep.unfilled = work.missing_count();
  return result;
}

}  // namespace smartload
