#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smartload/calendar_date.hpp"
#include "smartload/csv.hpp"
#include "smartload/error.hpp"
#include "smartload/ingest.hpp"

namespace smartload {

enum class Transform { none, log1p };

inline std::string to_string(Transform t) { return t == Transform::log1p ? "log1p" : "none"; }

inline Transform parse_transform(const std::string& name) {
  if (name == "none") return Transform::none;
  if (name == "log1p") return Transform::log1p;
  throw Error(ErrorKind::InvalidArgument, "unknown transform '" + name + "'");
}

/// Which features the matrix carries and how consumption values are scaled.
///
/// time_part_boundaries holds the first slot of morning, afternoon, evening and
/// night; night wraps past midnight back to the morning boundary.
struct FeatureSpec {
  std::vector<int> lags{1, 2};
  bool include_prev_day_min_max = true;
  bool include_week_lag = false;
  std::array<int, 4> time_part_boundaries{12, 24, 36, 44};
  Transform transform = Transform::none;
  double scale_factor = 1000.0;

  void validate() const {
    for (int lag : lags) {
      if (lag < 1 || lag > kSlotsPerWeek) {
        throw Error(ErrorKind::InvalidArgument, "lag " + std::to_string(lag) + " outside 1..336");
      }
    }
    if (!(scale_factor > 0.0) || !std::isfinite(scale_factor)) {
      throw Error(ErrorKind::InvalidArgument, "scale_factor must be positive");
    }
    for (std::size_t i = 0; i < time_part_boundaries.size(); ++i) {
      int b = time_part_boundaries[i];
      if (b < 0 || b >= kSlotsPerDay || (i > 0 && b <= time_part_boundaries[i - 1])) {
        throw Error(ErrorKind::InvalidArgument, "time_part_boundaries must be strictly increasing in 0..47");
      }
    }
  }

  /// Sorted, de-duplicated lag set including the week lag when enabled.
  std::vector<int> effective_lags() const {
    std::vector<int> out = lags;
    if (include_week_lag) out.push_back(kSlotsPerWeek);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

/// Training data D: row-major features, transformed targets and the period each
/// row predicts.
struct FeatureMatrix {
  std::vector<std::string> column_names;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<SlotTime> timestamps;
  std::vector<std::size_t> series_index;

  std::size_t rows() const { return y.size(); }
  std::size_t cols() const { return column_names.size(); }
  std::span<const double> row(std::size_t i) const { return {x.data() + i * cols(), cols()}; }
  double at(std::size_t i, std::size_t j) const { return x[i * cols() + j]; }

  void push_row(std::span<const double> features, double target, SlotTime t, std::size_t index) {
    x.insert(x.end(), features.begin(), features.end());
    y.push_back(target);
    timestamps.push_back(t);
    series_index.push_back(index);
  }

  FeatureMatrix empty_like() const { return FeatureMatrix{column_names, {}, {}, {}, {}}; }

  FeatureMatrix slice(std::size_t begin, std::size_t end) const {
    FeatureMatrix out = empty_like();
    for (std::size_t i = begin; i < end; ++i) out.push_row(row(i), y[i], timestamps[i], series_index[i]);
    return out;
  }

  /// Builds a matrix from plain rows; timestamps are consecutive slots from 2000-01-01.
  static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows, std::vector<double> targets) {
    if (rows.size() != targets.size()) throw Error(ErrorKind::LengthMismatch, "rows vs targets");
    FeatureMatrix m;
    const std::size_t p = rows.empty() ? 0 : rows.front().size();
    for (std::size_t j = 0; j < p; ++j) m.column_names.push_back("f" + std::to_string(j));
    LoadSeries clock{Date{std::chrono::year{2000} / 1 / 1}, {}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != p) throw Error(ErrorKind::DimensionMismatch, "ragged rows");
      m.push_row(rows[i], targets[i], clock.timestamp(i), i);
    }
    return m;
  }
};

// ---- value transforms ------------------------------------------------------

inline double forward_transform(double v, const FeatureSpec& spec) {
  double s = spec.scale_factor * v;
  if (spec.transform == Transform::log1p) {
    if (v < 0.0) throw Error(ErrorKind::NegativeValue, "log1p of negative consumption " + csv::format_number(v));
    return std::log1p(s);
  }
  return s;
}

inline double inverse_transform(double v, const FeatureSpec& spec) {
  if (spec.transform == Transform::log1p) v = std::expm1(v);
  return v / spec.scale_factor;
}

inline std::vector<double> apply_transform(std::span<const double> values, const FeatureSpec& spec) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [&](double v) { return forward_transform(v, spec); });
  return out;
}

inline std::vector<double> invert_transform(std::span<const double> values, const FeatureSpec& spec) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [&](double v) { return inverse_transform(v, spec); });
  return out;
}

// ---- calendar features -----------------------------------------------------

inline constexpr std::array<const char*, 7> kDayNames{"mon", "tue", "wed", "thu", "fri", "sat", "sun"};
inline constexpr std::array<const char*, 4> kTimePartNames{"morning", "afternoon", "evening", "night"};

/// 0 morning, 1 afternoon, 2 evening, 3 night.
inline int time_part(int slot, const std::array<int, 4>& b) {
  for (int part = 0; part < 3; ++part) {
    if (slot >= b[part] && slot < b[part + 1]) return part;
  }
  return 3;
}

inline std::vector<std::string> calendar_feature_names() {
  std::vector<std::string> names{"day_hour_index"};
  for (int m = 1; m <= 12; ++m) names.push_back("month_" + std::to_string(m));
  for (auto d : kDayNames) names.push_back(std::string("dow_") + d);
  names.push_back("is_weekend");
  names.push_back("is_holiday");
  for (auto part : kTimePartNames) names.push_back(std::string("time_part_") + part);
  return names;
}

inline constexpr std::size_t kCalendarFeatureCount = 1 + 12 + 7 + 1 + 1 + 4;

namespace detail {

inline void fill_calendar(const SlotTime& t, const HolidayCalendar& calendar, const std::array<int, 4>& bounds,
                          double* out) {
  std::fill(out, out + kCalendarFeatureCount, 0.0);
  out[0] = t.slot;
  out[1 + (month_of(t.date) - 1)] = 1.0;
  const unsigned dow = iso_weekday_index(t.date);
  out[13 + dow] = 1.0;
  out[20] = dow >= 5 ? 1.0 : 0.0;
  out[21] = calendar.is_holiday(t.date) ? 1.0 : 0.0;
  out[22 + time_part(t.slot, bounds)] = 1.0;
}

}  // namespace detail

inline std::vector<std::pair<std::string, double>> calendar_features(
    const SlotTime& t, const HolidayCalendar& calendar,
    const std::array<int, 4>& bounds = FeatureSpec{}.time_part_boundaries) {
  std::array<double, kCalendarFeatureCount> values{};
  detail::fill_calendar(t, calendar, bounds, values.data());
  auto names = calendar_feature_names();
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < names.size(); ++i) out.emplace_back(names[i], values[i]);
  return out;
}

// ---- history features ------------------------------------------------------

/// lag_l = value at index t - l, in lag order.
inline std::vector<double> lag_features(const LoadSeries& series, std::size_t t, std::span<const int> lags) {
  std::vector<double> out;
  out.reserve(lags.size());
  for (int lag : lags) {
    if (lag < 1 || static_cast<std::size_t>(lag) > t || t >= series.size() ||
        !series.values[t - static_cast<std::size_t>(lag)]) {
      throw Error(ErrorKind::InsufficientHistory, "lag " + std::to_string(lag) + " at index " + std::to_string(t));
    }
    out.push_back(*series.values[t - static_cast<std::size_t>(lag)]);
  }
  return out;
}

/// Min and max over the 48 slots of the calendar day before index t.
inline std::pair<double, double> prev_day_stats(const LoadSeries& series, std::size_t t) {
  const std::size_t day = t / kSlotsPerDay;
  if (day == 0 || t >= series.size()) {
    throw Error(ErrorKind::InsufficientHistory, "no previous day for index " + std::to_string(t));
  }
  const std::size_t begin = (day - 1) * kSlotsPerDay;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = begin; i < begin + kSlotsPerDay; ++i) {
    if (!series.values[i]) {
      throw Error(ErrorKind::InsufficientHistory, "previous day incomplete at index " + std::to_string(i));
    }
    double v = *series.values[i];
    if (i == begin || v < lo) lo = v;
    if (i == begin || v > hi) hi = v;
  }
  return {lo, hi};
}

// ---- autocorrelation -------------------------------------------------------

struct AcfResult {
  std::vector<double> values;  // values[l - 1] is r_l

  double at_lag(std::size_t lag) const { return values.at(lag - 1); }
};

/// Sample autocorrelation over pairwise-complete observations, centred on the
/// mean of all present values.
inline AcfResult autocorrelation(const LoadSeries& series, std::size_t max_lag) {
  if (max_lag == 0 || series.size() <= max_lag + 2) {
    throw Error(ErrorKind::InsufficientHistory, "series too short for max_lag " + std::to_string(max_lag));
  }
  const auto& v = series.values;
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& e : v) {
    if (e) {
      sum += *e;
      ++count;
    }
  }
  if (count == 0) throw Error(ErrorKind::DegenerateSeries, "no present values");
  const double mean = sum / static_cast<double>(count);
  double denom = 0.0;
  for (const auto& e : v) {
    if (e) denom += (*e - mean) * (*e - mean);
  }
  if (!(denom > 0.0)) throw Error(ErrorKind::DegenerateSeries, "zero variance");

  AcfResult acf;
  acf.values.reserve(max_lag);
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    double num = 0.0;
    for (std::size_t t = 0; t + lag < v.size(); ++t) {
      if (v[t] && v[t + lag]) num += (*v[t] - mean) * (*v[t + lag] - mean);
    }
    acf.values.push_back(num / denom);
  }
  return acf;
}

/// The k lags with the largest |r|; ties go to the smaller lag. Returned sorted.
inline std::vector<int> select_lags(const AcfResult& acf, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  std::vector<int> order(acf.values.size());
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(acf.values[static_cast<std::size_t>(a - 1)]) > std::abs(acf.values[static_cast<std::size_t>(b - 1)]);
  });
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

// ---- matrix assembly -------------------------------------------------------

inline std::vector<std::string> feature_column_names(const FeatureSpec& spec) {
  auto names = calendar_feature_names();
  for (int lag : spec.effective_lags()) names.push_back("lag_" + std::to_string(lag));
  if (spec.include_prev_day_min_max) {
    names.push_back("prev_day_min");
    names.push_back("prev_day_max");
  }
  return names;
}

/// Series with every present value mapped through the spec's transform.
inline LoadSeries transform_series(const LoadSeries& series, const FeatureSpec& spec) {
  LoadSeries out{series.start, {}};
  out.values.reserve(series.size());
  for (const auto& v : series.values) {
    out.values.push_back(v ? std::optional<double>(forward_transform(*v, spec)) : std::nullopt);
  }
  return out;
}

/// One row per index whose target and every referenced history value are present.
/// Lags, previous-day stats and the target all live on the transformed scale.
inline FeatureMatrix build_matrix(const LoadSeries& series, const HolidayCalendar& calendar,
                                  const FeatureSpec& spec = {}) {
  spec.validate();
  const auto scaled = transform_series(series, spec);
  const auto lags = spec.effective_lags();
  FeatureMatrix m;
  m.column_names = feature_column_names(spec);
  const std::size_t p = m.column_names.size();

  // day_stats[d] = (min, max) of day d when all 48 slots are present.
  const std::size_t days = scaled.size() / kSlotsPerDay;
  std::vector<std::optional<std::pair<double, double>>> day_stats(days);
  for (std::size_t d = 0; spec.include_prev_day_min_max && d < days; ++d) {
    const auto first = scaled.values.begin() + static_cast<long>(d * kSlotsPerDay);
    const auto last = first + kSlotsPerDay;
    if (std::find(first, last, std::nullopt) != last) continue;
    auto [lo, hi] = std::minmax_element(first, last);
    day_stats[d] = std::pair{**lo, **hi};
  }

  std::vector<double> row(p);
  for (std::size_t t = 0; t < scaled.size(); ++t) {
    if (!scaled.values[t]) continue;
    if (!lags.empty() && static_cast<std::size_t>(lags.back()) > t) continue;
    bool ok = true;
    for (int lag : lags) {
      if (!scaled.values[t - static_cast<std::size_t>(lag)]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const std::size_t day = t / kSlotsPerDay;
    if (spec.include_prev_day_min_max && (day == 0 || !day_stats[day - 1])) continue;

    const auto ts = scaled.timestamp(t);
    detail::fill_calendar(ts, calendar, spec.time_part_boundaries, row.data());
    std::size_t col = kCalendarFeatureCount;
    for (int lag : lags) row[col++] = *scaled.values[t - static_cast<std::size_t>(lag)];
    if (spec.include_prev_day_min_max) {
      row[col++] = day_stats[day - 1]->first;
      row[col++] = day_stats[day - 1]->second;
    }
    m.push_row(row, *scaled.values[t], ts, t);
  }
  if (m.rows() == 0) throw Error(ErrorKind::EmptyMatrix, "no row has sufficient history");
  return m;
}

/// Header = column names + target + timestamp.
inline void write_matrix_csv(std::ostream& out, const FeatureMatrix& m) {
  for (const auto& name : m.column_names) out << csv::quote(name) << ',';
  out << "target,timestamp\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (double v : m.row(i)) out << csv::format_number(v) << ',';
    out << csv::format_number(m.y[i]) << ',' << format_slot_time(m.timestamps[i]) << '\n';
  }
}

}  // namespace smartload
