#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smartload/calendar_date.hpp"
#include "smartload/csv.hpp"
#include "smartload/error.hpp"

namespace smartload {

// One row of the wide meter file: a calendar day with 48 half-hour readings.
struct WideDayRecord {
  std::string site_name;
  std::string utility;
  std::string unit;
  Date date{};
  std::array<std::optional<double>, kSlotsPerDay> slots{};
  std::optional<double> total;
};

struct IngestWarning {
  std::size_t line = 0;
  std::string message;
};

struct WideCsv {
  std::vector<WideDayRecord> records;
  std::vector<IngestWarning> warnings;
};

/// Long, period-indexed series. Entry i sits at day start + i / 48, slot i % 48,
/// so timestamps are strictly increasing with no holes by construction.
struct LoadSeries {
  Date start{};
  std::vector<std::optional<double>> values;

  std::size_t size() const { return values.size(); }
  SlotTime timestamp(std::size_t i) const {
    return {start + std::chrono::days{static_cast<long>(i / kSlotsPerDay)},
            static_cast<int>(i % kSlotsPerDay)};
  }
  std::size_t missing_count() const {
    return static_cast<std::size_t>(std::count(values.begin(), values.end(), std::nullopt));
  }
  friend bool operator==(const LoadSeries&, const LoadSeries&) = default;
};

struct HolidayEntry {
  bool is_holiday = false;
  std::string name;
};

struct HolidayCalendar {
  std::map<Date, HolidayEntry> entries;

  bool is_holiday(Date date) const {
    auto it = entries.find(date);
    return it != entries.end() && it->second.is_holiday;
  }
};

inline constexpr std::size_t kWideColumnCount = 3 + kSlotsPerDay + 2;
inline constexpr double kTotalTolerance = 0.5;

namespace detail {

inline bool is_missing_token(const std::string& cell) { return cell.empty() || cell == "NA"; }

// Accepts "H:MM" or "HH:MM" matching the expected slot start.
inline bool slot_header_matches(const std::string& cell, int slot) {
  auto colon = cell.find(':');
  if (colon == std::string::npos) return false;
  int h = 0, m = 0;
  if (!parse_int(std::string_view(cell).substr(0, colon), h) ||
      !parse_int(std::string_view(cell).substr(colon + 1), m)) {
    return false;
  }
  return h == slot / 2 && m == (slot % 2) * kSlotMinutes;
}

inline void check_wide_header(const std::vector<std::string>& raw) {
  if (raw.size() != kWideColumnCount) {
    throw Error(ErrorKind::MalformedHeader, "expected " + std::to_string(kWideColumnCount) +
                                                " columns, found " + std::to_string(raw.size()));
  }
  auto name = [&](std::size_t i) { return csv::lower(csv::trim(raw[i])); };
  if (name(0) != "site name" || name(1) != "utility" || name(2) != "unit" ||
      name(kWideColumnCount - 2) != "total" || name(kWideColumnCount - 1) != "date") {
    throw Error(ErrorKind::MalformedHeader,
                "expected columns Site Name, Utility, Unit, 00:00..23:30, Total, Date");
  }
  for (int s = 0; s < kSlotsPerDay; ++s) {
    if (!slot_header_matches(csv::trim(raw[3 + s]), s)) {
      throw Error(ErrorKind::MalformedHeader, "slot column " + std::to_string(s) + " is '" + raw[3 + s] + "'");
    }
  }
}

}  // namespace detail

inline WideCsv parse_wide_csv(std::istream& in) {
  WideCsv out;
  std::string line;
  std::size_t line_number = 0;
  if (!csv::next_record(in, line, line_number)) throw Error(ErrorKind::MalformedHeader, "empty file");
  detail::check_wide_header(csv::split_line(line));

  while (csv::next_record(in, line, line_number)) {
    auto cells = csv::split_line(line);
    if (cells.size() != kWideColumnCount) {
      throw Error(ErrorKind::MalformedHeader, "line " + std::to_string(line_number) + " has " +
                                                  std::to_string(cells.size()) + " columns");
    }
    for (auto& c : cells) c = csv::trim(c);

    WideDayRecord rec;
    rec.site_name = cells[0];
    rec.utility = cells[1];
    rec.unit = cells[2];
    auto date = parse_date(cells[kWideColumnCount - 1]);
    if (!date) {
      throw Error(ErrorKind::UnparseableDate,
                  "line " + std::to_string(line_number) + ": '" + cells[kWideColumnCount - 1] + "'");
    }
    rec.date = *date;
    if (!rec.unit.empty() && csv::lower(rec.unit) != "kwh") {
      out.warnings.push_back({line_number, "UnitMismatch: unit '" + rec.unit + "', values kept as-is"});
    }

    double present_sum = 0.0;
    for (int s = 0; s < kSlotsPerDay; ++s) {
      const auto& cell = cells[3 + s];
      if (detail::is_missing_token(cell)) continue;
      auto v = csv::parse_number(cell);
      if (!v || !std::isfinite(*v)) {
        out.warnings.push_back({line_number, "UnparseableValue: slot " + std::to_string(s) + " '" + cell +
                                                 "' treated as missing"});
        continue;
      }
      rec.slots[s] = *v;
      present_sum += *v;
    }
    const auto& total_cell = cells[kWideColumnCount - 2];
    if (!detail::is_missing_token(total_cell)) {
      rec.total = csv::parse_number(total_cell);
      if (rec.total && std::abs(*rec.total - present_sum) > kTotalTolerance) {
        out.warnings.push_back({line_number, "TotalMismatch: total " + csv::format_number(*rec.total) +
                                                 " vs slot sum " + csv::format_number(present_sum)});
      }
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

inline WideCsv parse_wide_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return parse_wide_csv(in);
}

/// Transposes day rows into one long series, densifying absent interior dates as
/// 48 missing entries each.
inline LoadSeries to_long_series(std::vector<WideDayRecord> records) {
  if (records.empty()) throw Error(ErrorKind::EmptyInput, "no day records");
  std::sort(records.begin(), records.end(),
            [](const WideDayRecord& a, const WideDayRecord& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].date == records[i - 1].date) {
      throw Error(ErrorKind::DuplicateDate, format_date(records[i].date));
    }
  }
  LoadSeries series;
  series.start = records.front().date;
  auto days = (records.back().date - records.front().date).count() + 1;
  series.values.assign(static_cast<std::size_t>(days) * kSlotsPerDay, std::nullopt);
  for (const auto& rec : records) {
    auto offset = static_cast<std::size_t>((rec.date - series.start).count()) * kSlotsPerDay;
    std::copy(rec.slots.begin(), rec.slots.end(), series.values.begin() + static_cast<long>(offset));
  }
  return series;
}

inline HolidayCalendar parse_holiday_calendar(std::istream& in) {
  HolidayCalendar cal;
  std::string line;
  std::size_t line_number = 0;
  if (!csv::next_record(in, line, line_number)) throw Error(ErrorKind::MalformedHeader, "empty holiday file");
  auto header = csv::split_line(line);
  if (header.size() != 3 || csv::lower(csv::trim(header[0])) != "date" ||
      csv::lower(csv::trim(header[1])) != "is_holiday" || csv::lower(csv::trim(header[2])) != "name") {
    throw Error(ErrorKind::MalformedHeader, "holiday header must be date,is_holiday,name");
  }
  while (csv::next_record(in, line, line_number)) {
    auto cells = csv::split_line(line);
    if (cells.size() != 3) {
      throw Error(ErrorKind::MalformedHeader, "line " + std::to_string(line_number) + " has " +
                                                  std::to_string(cells.size()) + " columns");
    }
    auto date = parse_date(cells[0]);
    if (!date) throw Error(ErrorKind::UnparseableDate, "line " + std::to_string(line_number) + ": '" + cells[0] + "'");
    auto flag = csv::lower(csv::trim(cells[1]));
    bool holiday = false;
    if (flag == "true" || flag == "1") {
      holiday = true;
    } else if (flag != "false" && flag != "0") {
      throw Error(ErrorKind::UnparseableValue, "line " + std::to_string(line_number) + ": is_holiday '" + cells[1] + "'");
    }
    if (!cal.entries.emplace(*date, HolidayEntry{holiday, csv::trim(cells[2])}).second) {
      throw Error(ErrorKind::DuplicateDate, format_date(*date));
    }
  }
  return cal;
}

inline HolidayCalendar parse_holiday_calendar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return parse_holiday_calendar(in);
}

/// Long-format CSV: date,slot,value (blank value = missing).
inline void write_series_csv(std::ostream& out, const LoadSeries& series) {
  out << "date,slot,value\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    auto t = series.timestamp(i);
    out << format_date(t.date) << ',' << t.slot << ',';
    if (series.values[i]) out << csv::format_number(*series.values[i]);
    out << '\n';
  }
}

inline LoadSeries read_series_csv(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  if (!csv::next_record(in, line, line_number)) throw Error(ErrorKind::MalformedHeader, "empty series file");
  LoadSeries series;
  bool first = true;
  while (csv::next_record(in, line, line_number)) {
    auto cells = csv::split_line(line);
    if (cells.size() != 3) throw Error(ErrorKind::MalformedHeader, "series line " + std::to_string(line_number));
    auto date = parse_date(cells[0]);
    int slot = -1;
    if (!date) throw Error(ErrorKind::UnparseableDate, "line " + std::to_string(line_number));
    if (!detail::parse_int(csv::trim(cells[1]), slot) || slot < 0 || slot >= kSlotsPerDay) {
      throw Error(ErrorKind::UnparseableValue, "slot on line " + std::to_string(line_number));
    }
    if (first) {
      if (slot != 0) throw Error(ErrorKind::InvalidArgument, "series must start at slot 0");
      series.start = *date;
      first = false;
    }
    if (series.timestamp(series.size()) != SlotTime{*date, slot}) {
      throw Error(ErrorKind::InvalidArgument, "non-consecutive period on line " + std::to_string(line_number));
    }
    auto cell = csv::trim(cells[2]);
    series.values.push_back(detail::is_missing_token(cell) ? std::nullopt : csv::parse_number(cell));
  }
  if (first) throw Error(ErrorKind::EmptyInput, "series file has no rows");
  return series;
}

}  // namespace smartload
