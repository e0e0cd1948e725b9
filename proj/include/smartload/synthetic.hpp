#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <vector>

#include "smartload/calendar_date.hpp"
#include "smartload/csv.hpp"
#include "smartload/ingest.hpp"
#include "smartload/rng.hpp"

namespace smartload {

/// Office-building style load: weekday working-hours peak, flat weekends,
/// holiday dips, winter uplift, AR(1) multiplicative noise and punched gaps.
struct SyntheticOptions {
  int first_year = 2011;
  int years = 3;
  int days = 0;  // when positive, overrides `years`
  int start_day = 0;  // offset of the first generated day from 1 January
  double gap_fraction = 0.05;
  std::uint64_t seed = 42;
  double base_load = 4.0;
  double peak_load = 10.0;
  double noise_ar = 0.9;
  double noise_innovation = 0.03;
  double noise_white = 0.15;
};

struct SyntheticData {
  std::vector<WideDayRecord> records;
  HolidayCalendar calendar;
  LoadSeries truth;  // values before gaps were punched
};

namespace detail {

inline Date nth_weekday(int year, unsigned month, std::chrono::weekday wd, int n) {
  using namespace std::chrono;
  if (n > 0) return sys_days{year_month_weekday{std::chrono::year{year} / month / wd[static_cast<unsigned>(n)]}};
  return sys_days{year_month_weekday_last{std::chrono::year{year} / month / wd[last]}};
}

}  // namespace detail

inline HolidayCalendar synthetic_holidays(int first_year, int years) {
  using namespace std::chrono;
  HolidayCalendar cal;
  for (int y = first_year; y < first_year + years; ++y) {
    const std::chrono::year yr{y};
    cal.entries[sys_days{yr / January / 1}] = {true, "New Year's Day"};
    cal.entries[detail::nth_weekday(y, 5, Monday, 1)] = {true, "Early May Bank Holiday"};
    cal.entries[detail::nth_weekday(y, 5, Monday, -1)] = {true, "Spring Bank Holiday"};
    cal.entries[detail::nth_weekday(y, 8, Monday, -1)] = {true, "Summer Bank Holiday"};
    cal.entries[sys_days{yr / December / 25}] = {true, "Christmas Day"};
    cal.entries[sys_days{yr / December / 26}] = {true, "Boxing Day"};
  }
  return cal;
}

inline SyntheticData generate_synthetic(const SyntheticOptions& opt = {}) {
  using namespace std::chrono;
  SyntheticData data;
  const Date first = Date{std::chrono::year{opt.first_year} / January / 1} + std::chrono::days{opt.start_day};
  const Date end = opt.days > 0 ? first + std::chrono::days{opt.days}
                                : Date{std::chrono::year{opt.first_year + opt.years} / January / 1};
  const auto days = static_cast<std::size_t>((end - first).count());
  const int last_year = static_cast<int>(year_month_day{end - std::chrono::days{1}}.year());
  data.calendar = synthetic_holidays(opt.first_year, last_year - opt.first_year + 1);

  Rng rng(stream_seed(opt.seed, 0));
  data.truth.start = first;
  data.truth.values.reserve(days * kSlotsPerDay);
  double ar = 0.0;
  for (std::size_t d = 0; d < days; ++d) {
    const Date date = first + std::chrono::days{static_cast<long>(d)};
    const double doy = static_cast<double>((date - Date{year_month_day{date}.year() / January / 1}).count());
    const bool weekend = iso_weekday_index(date) >= 5;
    const bool holiday = data.calendar.is_holiday(date);
    const double seasonal = 1.0 + 0.25 * std::cos(6.283185307179586 * (doy - 15.0) / 365.25);
    for (int s = 0; s < kSlotsPerDay; ++s) {
      const double hour = s / 2.0;
      double occupancy = 0.0;
      if (hour >= 7.0 && hour <= 19.0) occupancy = std::pow(std::sin(3.141592653589793 * (hour - 7.0) / 12.0), 1.5);
      double load = opt.base_load * seasonal;
      if (holiday) {
        load *= 0.8;
      } else if (weekend) {
        load += 0.1 * opt.peak_load * occupancy;
      } else {
        load += opt.peak_load * seasonal * occupancy;
      }
      ar = opt.noise_ar * ar + opt.noise_innovation * rng.normal();
      double v = load * (1.0 + ar) + opt.noise_white * rng.normal();
      v = std::round(std::max(v, 0.0) * 1000.0) / 1000.0;
      data.truth.values.push_back(v);
    }
  }

  auto observed = data.truth.values;
  const auto target = static_cast<std::size_t>(opt.gap_fraction * static_cast<double>(observed.size()));
  std::size_t missing = 0;
  Rng gaps(stream_seed(opt.seed, 1));
  while (missing < target) {
    const bool short_gap = gaps.uniform01() < 0.7;
    const auto len = static_cast<std::size_t>(short_gap ? gaps.uniform_int(1, 4) : gaps.uniform_int(5, 24));
    const auto at = static_cast<std::size_t>(gaps.uniform_int(0, static_cast<std::int64_t>(observed.size() - len)));
    for (std::size_t i = at; i < at + len && missing < target; ++i) {
      if (observed[i]) {
        observed[i].reset();
        ++missing;
      }
    }
  }

  for (std::size_t d = 0; d < days; ++d) {
    WideDayRecord rec;
    rec.site_name = "Synthetic Office";
    rec.utility = "Electricity";
    rec.unit = "kWh";
    rec.date = first + std::chrono::days{static_cast<long>(d)};
    double total = 0.0;
    for (int s = 0; s < kSlotsPerDay; ++s) {
      rec.slots[static_cast<std::size_t>(s)] = observed[d * kSlotsPerDay + static_cast<std::size_t>(s)];
      if (rec.slots[static_cast<std::size_t>(s)]) total += *rec.slots[static_cast<std::size_t>(s)];
    }
    rec.total = std::round(total * 1000.0) / 1000.0;
    data.records.push_back(std::move(rec));
  }
  return data;
}

inline void write_wide_csv(std::ostream& out, const std::vector<WideDayRecord>& records) {
  out << "Site Name,Utility,Unit";
  for (int s = 0; s < kSlotsPerDay; ++s) {
    char buf[8];
    std::snprintf(buf, sizeof buf, ",%02d:%02d", s / 2, (s % 2) * kSlotMinutes);
    out << buf;
  }
  out << ",Total,Date\n";
  for (const auto& r : records) {
    out << csv::quote(r.site_name) << ',' << csv::quote(r.utility) << ',' << csv::quote(r.unit);
    for (const auto& v : r.slots) {
      out << ',';
      if (v) out << csv::format_number(*v);
    }
    out << ',';
    if (r.total) out << csv::format_number(*r.total);
    out << ',' << format_date(r.date) << '\n';
  }
}

inline void write_holiday_csv(std::ostream& out, const HolidayCalendar& calendar) {
  out << "date,is_holiday,name\n";
  for (const auto& [date, entry] : calendar.entries) {
    out << format_date(date) << ',' << (entry.is_holiday ? "true" : "false") << ',' << csv::quote(entry.name) << '\n';
  }
}

}  // namespace smartload
