#include <algorithm>
#include <unordered_map>

#include "gridflex/error.hpp"
#include "gridflex/regress.hpp"

namespace gridflex {

std::size_t LoadSeries::valid_count() const {
  return static_cast<std::size_t>(std::count_if(valid.begin(), valid.end(), [](std::uint8_t v) { return v != 0; }));
}

CalendarFeatures calendar_features(std::span<const HourStamp> timestamps, int day_boundary_offset_hours) {
  CalendarFeatures cal;
  cal.hod.reserve(timestamps.size());
  cal.hoy.reserve(timestamps.size());
  cal.dow.reserve(timestamps.size());
  for (const HourStamp t : timestamps) {
    const LocalHour local = to_local(t, day_boundary_offset_hours);
    cal.hod.push_back(static_cast<double>(local.hour + 1));
    double hoy = static_cast<double>(local.hour_of_year);
    if (local.leap_year) hoy = 1.0 + (hoy - 1.0) * (kHoyHi - 1.0) / 8783.0;
    cal.hoy.push_back(hoy);
    cal.dow.push_back(static_cast<int>(local.iso_weekday));
  }
  return cal;
}

WeatherTerms WeatherTerms::zeros(std::size_t n, bool interactions) {
  WeatherTerms w;
  w.hdh.assign(n, 0.0);
  w.cdh.assign(n, 0.0);
  if (interactions) {
    w.hdh_interaction.assign(n, 0.0);
    w.cdh_interaction.assign(n, 0.0);
  }
  return w;
}

WeatherTerms align_weather(std::span<const HourStamp> timestamps, const RegionalWeather& weather) {
  WeatherTerms out;
  const bool inter = weather.has_interactions();
  out.hdh.reserve(timestamps.size());
  out.cdh.reserve(timestamps.size());
  if (weather.timestamps.empty()) {
    if (!timestamps.empty()) throw InputError("region " + weather.region_id + ": weather series is empty");
    return out;
  }
  const HourStamp first = weather.timestamps.front();
  const bool contiguous = (weather.timestamps.back() - first) == static_cast<std::int64_t>(weather.timestamps.size()) - 1;
  std::unordered_map<std::int64_t, std::size_t> index;
  if (!contiguous) {
    for (std::size_t i = 0; i < weather.timestamps.size(); ++i) index.emplace(weather.timestamps[i].hours, i);
  }
  for (const HourStamp t : timestamps) {
    std::size_t i = 0;
    bool found = false;
    if (contiguous) {
      const std::int64_t rel = t - first;
      if (rel >= 0 && rel < static_cast<std::int64_t>(weather.timestamps.size())) {
        i = static_cast<std::size_t>(rel);
        found = true;
      }
    } else if (auto it = index.find(t.hours); it != index.end()) {
      i = it->second;
      found = true;
    }
    if (!found) throw InputError("region " + weather.region_id + ": no weather for hour " + format_rfc3339(t));
    out.hdh.push_back(weather.hdh[i]);
    out.cdh.push_back(weather.cdh[i]);
    if (inter) {
      out.hdh_interaction.push_back(weather.hdh_interaction[i]);
      out.cdh_interaction.push_back(weather.cdh_interaction[i]);
    }
  }
  return out;
}

}  // namespace gridflex
