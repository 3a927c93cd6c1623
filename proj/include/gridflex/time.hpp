#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gridflex {

// An hour mark in UTC, counted in whole hours since 1970-01-01T00:00:00Z.
struct HourStamp {
  std::int64_t hours = 0;

  friend auto operator<=>(const HourStamp&, const HourStamp&) = default;
  HourStamp operator+(std::int64_t h) const { return HourStamp{hours + h}; }
  std::int64_t operator-(const HourStamp& other) const { return hours - other.hours; }
};

// Accepts "YYYY-MM-DDTHH:MM:SSZ" and numeric offsets ("+HH:MM"); minutes and
// seconds must land on an hour boundary after the offset is applied.
HourStamp parse_rfc3339(std::string_view text);
std::string format_rfc3339(HourStamp t);

HourStamp hour_stamp(std::chrono::year_month_day date, int hour);

// Calendar view of a UTC hour in a fixed-offset local clock.
struct LocalHour {
  std::chrono::year_month_day date;
  int hour = 0;              // 0..23
  unsigned iso_weekday = 1;  // Monday = 1 .. Sunday = 7
  int hour_of_year = 1;      // 1-based, up to 8784 in leap years
  bool leap_year = false;
};

LocalHour to_local(HourStamp t, int offset_hours);

// Day number (days since epoch) of the fixed-offset local day containing t.
std::int64_t local_day_index(HourStamp t, int offset_hours);
std::chrono::year_month_day day_index_to_date(std::int64_t day);
std::string format_date(std::chrono::year_month_day date);

int hours_in_year(int year);

}  // namespace gridflex
