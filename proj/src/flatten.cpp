#include "gridflex/flatten.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "gridflex/error.hpp"
#include "gridflex/metrics.hpp"

namespace gridflex {

WaterFill water_fill(std::span<const double> hard, double flex_total) {
  if (!(flex_total >= 0.0) || !std::isfinite(flex_total)) {
    throw InputError("flexible budget must be finite and nonnegative");
  }
  if (hard.empty()) throw InputError("cannot flatten an empty day");
  const std::size_t n = hard.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return hard[a] < hard[b]; });

  double cumulative = 0.0;
  double level = 0.0;
  std::size_t filled = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    cumulative += hard[order[k - 1]];
    const double v = (cumulative + flex_total) / static_cast<double>(k);
    if (k == 1 || v <= level) {
      level = v;
      filled = k;
    }
  }
  WaterFill out;
  out.level = level;
  out.filled_hours = filled;
  out.profile.assign(hard.begin(), hard.end());
  for (std::size_t k = 0; k < filled; ++k) {
    const std::size_t h = order[k];
    out.profile[h] = std::max(level, hard[h]);
  }
  return out;
}

DayReference observed_reference(std::span<const double> observed) {
  DayReference ref;
  ref.peak = *std::max_element(observed.begin(), observed.end());
  ref.base = *std::min_element(observed.begin(), observed.end());
  ref.sd = population_sd(observed);
  return ref;
}

FlattenedDay flatten_day(const DayProfile& day) {
  if (day.hard.size() != day.observed.size()) throw InputError("day profile hard/observed lengths differ");
  WaterFill fill = water_fill(day.hard, day.flex_total);
  FlattenedDay out;
  out.pool_id = day.pool_id;
  out.date = day.date;
  out.observed = day.observed;
  out.hard = day.hard;
  out.level = fill.level;
  out.profile = std::move(fill.profile);
  // Flattenable iff the peak hard hour is at or below the day's mean load,
  // i.e. the minimizing prefix covers every hour.
  const double mean_load =
      (std::accumulate(day.hard.begin(), day.hard.end(), 0.0) + day.flex_total) / static_cast<double>(day.hard.size());
  out.fully_flat = *std::max_element(day.hard.begin(), day.hard.end()) <= mean_load;
  out.reference = day.reference;
  out.stats = day_stats(out.reference, out.profile);
  return out;
}

FlattenSeriesResult flatten_series(const ShiftableSeries& series, int day_length) {
  if (day_length <= 0) throw InputError("day length must be positive");
  const std::size_t n = series.size();
  if (series.observed_mw.size() != n || series.hard_mw.size() != n || series.flexible_mw.size() != n) {
    throw InputError("shiftable series " + series.region_id + " has columns of different lengths");
  }
  for (const auto& m : series.member_observed_mw) {
    if (m.size() != n) throw InputError("pool member coverage does not match the pool");
  }
  FlattenSeriesResult result;
  const std::int64_t len = day_length;
  std::size_t i = 0;
  // Days are windows of day_length hours starting at local midnight.
  const auto window_of = [&](HourStamp t) {
    const std::int64_t local = t.hours + series.day_boundary_offset_hours;
    return local >= 0 ? local / len : -((-local + len - 1) / len);
  };
  while (i < n) {
    const std::int64_t window = window_of(series.timestamps[i]);
    std::size_t j = i;
    while (j < n && window_of(series.timestamps[j]) == window) ++j;
    bool complete = (j - i) == static_cast<std::size_t>(day_length);
    for (std::size_t k = i + 1; complete && k < j; ++k) {
      if (series.timestamps[k] - series.timestamps[k - 1] != 1) complete = false;
    }
    if (!complete) {
      ++result.skipped_days;
      i = j;
      continue;
    }
    DayProfile day;
    day.pool_id = series.region_id;
    day.date = day_index_to_date(local_day_index(series.timestamps[i], series.day_boundary_offset_hours));
    day.hard.assign(series.hard_mw.begin() + static_cast<std::ptrdiff_t>(i),
                    series.hard_mw.begin() + static_cast<std::ptrdiff_t>(j));
    day.observed.assign(series.observed_mw.begin() + static_cast<std::ptrdiff_t>(i),
                        series.observed_mw.begin() + static_cast<std::ptrdiff_t>(j));
    double flex = 0.0;
    for (std::size_t k = i; k < j; ++k) flex += series.flexible_mw[k];
    day.flex_total = flex;
    std::vector<std::vector<double>> members;
    if (series.member_observed_mw.empty()) {
      day.reference = observed_reference(day.observed);
    } else {
      for (const auto& member : series.member_observed_mw) {
        const auto slice = std::span<const double>(member).subspan(i, j - i);
        const auto r = observed_reference(slice);
        day.reference.peak += r.peak;
        day.reference.base += r.base;
        day.reference.sd += r.sd;
        members.emplace_back(slice.begin(), slice.end());
      }
    }
    result.days.push_back(flatten_day(day));
    result.days.back().member_observed = std::move(members);
    i = j;
  }
  return result;
}

std::string to_string(PoolLevel level) {
  switch (level) {
    case PoolLevel::Region: return "region";
    case PoolLevel::Interconnect: return "interconnect";
    case PoolLevel::Nation: return "nation";
  }
  return "region";
}

PoolLevel parse_pool_level(const std::string& text) {
  if (text == "region") return PoolLevel::Region;
  if (text == "interconnect") return PoolLevel::Interconnect;
  if (text == "nation" || text == "national" || text == "nationwide") return PoolLevel::Nation;
  throw InputError("unknown pooling level '" + text + "'");
}

ShiftableSeries pool_regions(std::span<const ShiftableSeries> members, const std::string& pool_id,
                             int reference_offset_hours) {
  if (members.empty()) throw InputError("cannot pool zero regions");
  const ShiftableSeries& first = members.front();
  for (const auto& m : members) {
    if (m.timestamps != first.timestamps) {
      const auto span_of = [](const ShiftableSeries& s) {
        return s.timestamps.empty() ? std::string("empty")
                                    : format_rfc3339(s.timestamps.front()) + " .. " +
                                          format_rfc3339(s.timestamps.back()) + " (" +
                                          std::to_string(s.timestamps.size()) + " hours)";
      };
      throw InputError("pool " + pool_id + ": coverage of " + m.region_id + " [" + span_of(m) + "] differs from " +
                       first.region_id + " [" + span_of(first) + "]");
    }
    if (m.alpha != first.alpha) throw InputError("pool " + pool_id + ": members built with different alpha");
  }
  ShiftableSeries pool;
  pool.region_id = pool_id;
  pool.interconnect = first.interconnect;
  pool.day_boundary_offset_hours = reference_offset_hours;
  pool.alpha = first.alpha;
  pool.timestamps = first.timestamps;
  const std::size_t n = first.size();
  pool.observed_mw.assign(n, 0.0);
  pool.hard_mw.assign(n, 0.0);
  pool.flexible_mw.assign(n, 0.0);
  pool.share.assign(n, 0.0);
  for (const auto& m : members) {
    for (std::size_t i = 0; i < n; ++i) {
      pool.hard_mw[i] += m.hard_mw[i];
      pool.flexible_mw[i] += m.flexible_mw[i];
      pool.observed_mw[i] += m.observed_mw[i];
    }
    if (m.member_observed_mw.empty()) {
      pool.member_observed_mw.push_back(m.observed_mw);
    } else {
      pool.member_observed_mw.insert(pool.member_observed_mw.end(), m.member_observed_mw.begin(),
                                     m.member_observed_mw.end());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    pool.share[i] = pool.observed_mw[i] > 0.0 ? pool.flexible_mw[i] / pool.observed_mw[i] : 0.0;
  }
  return pool;
}

std::vector<ShiftableSeries> pool_by_level(std::span<const ShiftableSeries> regions, PoolLevel level,
                                           int reference_offset_hours) {
  if (level == PoolLevel::Region) return {regions.begin(), regions.end()};
  if (level == PoolLevel::Nation) return {pool_regions(regions, "nation", reference_offset_hours)};
  std::map<Interconnect, std::vector<ShiftableSeries>> groups;
  for (const auto& r : regions) groups[r.interconnect].push_back(r);
  std::vector<ShiftableSeries> out;
  for (const auto& [ic, members] : groups) out.push_back(pool_regions(members, to_string(ic), reference_offset_hours));
  return out;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> alphas;
  for (int i = 1; i <= 100; ++i) alphas.push_back(static_cast<double>(i) / 100.0);
  return alphas;
}

std::vector<AlphaCurvePoint> alpha_sweep(const ShiftableSeries& series, std::span<const double> alphas) {
  std::vector<AlphaCurvePoint> curve;
  curve.reserve(alphas.size());
  for (const double alpha : alphas) {
    const ShiftableSeries scaled = with_alpha(series, alpha);
    const auto flat = flatten_series(scaled);
    AlphaCurvePoint point;
    point.alpha = alpha;
    if (!flat.days.empty()) {
      point.daily_sd_reduction_pct = daily_stats(flat.days).sd_reduction_pct;
      point.overall_sd_reduction_pct = overall_stats(flat.days).sd_reduction_pct;
    }
    if (!curve.empty() && alpha >= curve.back().alpha &&
        point.daily_sd_reduction_pct < curve.back().daily_sd_reduction_pct - 1e-9) {
      throw NumericalError("SD reduction decreased between alpha " + std::to_string(curve.back().alpha) + " and " +
                           std::to_string(alpha) + " for " + series.region_id);
    }
    curve.push_back(point);
  }
  return curve;
}

}  // namespace gridflex
