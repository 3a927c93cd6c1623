#include "gridflex/time.hpp"

#include <charconv>
#include <cstdio>

#include "gridflex/error.hpp"

namespace gridflex {
namespace {

using namespace std::chrono;

int parse_fixed(std::string_view text, std::size_t pos, std::size_t len) {
  if (pos + len > text.size()) {
    throw InputError("truncated timestamp '" + std::string(text) + "'");
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, value);
  if (ec != std::errc{} || ptr != text.data() + pos + len) {
    throw InputError("malformed timestamp '" + std::string(text) + "'");
  }
  return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || (text[pos] != c && !(c == 'T' && (text[pos] == 't' || text[pos] == ' ')))) {
    throw InputError("malformed timestamp '" + std::string(text) + "'");
  }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HourStamp parse_rfc3339(std::string_view text) {
  const int y = parse_fixed(text, 0, 4);
  expect(text, 4, '-');
  const int mo = parse_fixed(text, 5, 2);
  expect(text, 7, '-');
  const int d = parse_fixed(text, 8, 2);
  expect(text, 10, 'T');
  const int h = parse_fixed(text, 11, 2);
  expect(text, 13, ':');
  const int mi = parse_fixed(text, 14, 2);
  expect(text, 16, ':');
  const int s = parse_fixed(text, 17, 2);
  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (text[pos] != '0') throw InputError("timestamp not on an hour mark: '" + std::string(text) + "'");
      ++pos;
    }
  }
  int offset_minutes = 0;
  if (pos < text.size() && (text[pos] == 'Z' || text[pos] == 'z')) {
    ++pos;
  } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    const int sign = text[pos] == '-' ? -1 : 1;
    const int oh = parse_fixed(text, pos + 1, 2);
    expect(text, pos + 3, ':');
    const int om = parse_fixed(text, pos + 4, 2);
    offset_minutes = sign * (oh * 60 + om);
    pos += 6;
  } else {
    throw InputError("timestamp lacks a UTC offset: '" + std::string(text) + "'");
  }
  if (pos != text.size()) throw InputError("trailing characters in timestamp '" + std::string(text) + "'");

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) {
    throw InputError("invalid calendar value in timestamp '" + std::string(text) + "'");
  }
  const std::int64_t minutes =
      static_cast<std::int64_t>(sys_days{ymd}.time_since_epoch().count()) * 1440 + h * 60 + mi - offset_minutes;
  if (s != 0 || minutes % 60 != 0) {
    throw InputError("timestamp not on an hour mark: '" + std::string(text) + "'");
  }
  return HourStamp{minutes / 60};
}

std::string format_rfc3339(HourStamp t) {
  const std::int64_t day = floor_div(t.hours, 24);
  const int hour = static_cast<int>(t.hours - day * 24);
  const year_month_day ymd{sys_days{days{day}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:00:00Z", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hour);
  return buf;
}

HourStamp hour_stamp(year_month_day date, int hour) {
  return HourStamp{static_cast<std::int64_t>(sys_days{date}.time_since_epoch().count()) * 24 + hour};
}

LocalHour to_local(HourStamp t, int offset_hours) {
  const std::int64_t local = t.hours + offset_hours;
  const std::int64_t day = floor_div(local, 24);
  LocalHour out;
  out.hour = static_cast<int>(local - day * 24);
  const sys_days sd{days{day}};
  out.date = year_month_day{sd};
  out.iso_weekday = weekday{sd}.iso_encoding();
  out.leap_year = out.date.year().is_leap();
  const sys_days jan1{out.date.year() / January / 1};
  out.hour_of_year = static_cast<int>((sd - jan1).count()) * 24 + out.hour + 1;
  return out;
}

std::int64_t local_day_index(HourStamp t, int offset_hours) { return floor_div(t.hours + offset_hours, 24); }

year_month_day day_index_to_date(std::int64_t day) { return year_month_day{sys_days{days{day}}}; }

std::string format_date(year_month_day date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()), static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

int hours_in_year(int y) { return year{y}.is_leap() ? 8784 : 8760; }

}  // namespace gridflex
