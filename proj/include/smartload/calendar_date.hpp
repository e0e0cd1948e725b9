#pragma once

#include <charconv>
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace smartload {

using Date = std::chrono::sys_days;

inline constexpr int kSlotsPerDay = 48;
inline constexpr int kSlotMinutes = 30;
inline constexpr int kSlotsPerWeek = kSlotsPerDay * 7;

/// A half-hour period: calendar date plus slot-of-day 0..47.
struct SlotTime {
  Date date{};
  int slot = 0;

  friend bool operator==(const SlotTime&, const SlotTime&) = default;
  friend auto operator<=>(const SlotTime&, const SlotTime&) = default;
};

namespace detail {

inline bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

inline std::optional<Date> make_date(int y, int m, int d) {
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (m < 1 || m > 12 || d < 1 || !ymd.ok()) return std::nullopt;
  return Date{ymd};
}

}  // namespace detail

/// Parses YYYY-MM-DD first, then DD/MM/YYYY.
inline std::optional<Date> parse_date(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  int y = 0, m = 0, d = 0;
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    if (detail::parse_int(text.substr(0, 4), y) && detail::parse_int(text.substr(5, 2), m) &&
        detail::parse_int(text.substr(8, 2), d)) {
      return detail::make_date(y, m, d);
    }
    return std::nullopt;
  }
  auto first = text.find('/');
  auto second = first == std::string_view::npos ? first : text.find('/', first + 1);
  if (first == std::string_view::npos || second == std::string_view::npos) return std::nullopt;
  if (!detail::parse_int(text.substr(0, first), d) ||
      !detail::parse_int(text.substr(first + 1, second - first - 1), m) ||
      !detail::parse_int(text.substr(second + 1), y) || text.size() - second - 1 != 4) {
    return std::nullopt;
  }
  return detail::make_date(y, m, d);
}

inline std::string format_date(Date date) {
  std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

/// ISO-style "YYYY-MM-DDTHH:MM" for the start of the slot.
inline std::string format_slot_time(const SlotTime& t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "T%02d:%02d", t.slot / 2, (t.slot % 2) * kSlotMinutes);
  return format_date(t.date) + buf;
}

inline int year_of(Date date) { return static_cast<int>(std::chrono::year_month_day{date}.year()); }

inline unsigned month_of(Date date) {
  return static_cast<unsigned>(std::chrono::year_month_day{date}.month());
}

/// ISO weekday: Monday = 0 .. Sunday = 6.
inline unsigned iso_weekday_index(Date date) {
  return std::chrono::weekday{date}.iso_encoding() - 1;
}

}  // namespace smartload
