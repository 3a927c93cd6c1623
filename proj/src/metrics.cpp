#include "gridflex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gridflex/error.hpp"

namespace gridflex {

double population_sd(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) return 0.0;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n);
}

double sd_reduction(std::span<const double> raw, std::span<const double> flattened) {
  if (raw.size() != flattened.size()) throw InputError("sd_reduction: length mismatch");
  if (raw.size() < 2) throw InputError("sd_reduction needs at least 2 values");
  const double raw_sd = population_sd(raw);
  if (raw_sd == 0.0) return 0.0;
  return 100.0 * (1.0 - population_sd(flattened) / raw_sd);
}

DayStats day_stats(const DayReference& reference, std::span<const double> profile) {
  DayStats s;
  const auto [lo, hi] = std::minmax_element(profile.begin(), profile.end());
  s.peak_reduction_pct = reference.peak > 0.0 ? 100.0 * (1.0 - *hi / reference.peak) : 0.0;
  s.base_increase_pct = reference.base > 0.0 ? 100.0 * (*lo / reference.base - 1.0) : 0.0;
  s.sd_reduction_pct = reference.sd > 0.0 ? 100.0 * (1.0 - population_sd(profile) / reference.sd) : 0.0;
  return s;
}

DailySummary daily_stats(std::span<const FlattenedDay> days) {
  if (days.empty()) throw InputError("daily_stats needs at least one day");
  DailySummary s;
  s.days = days.size();
  double demand = 0.0;
  std::size_t hours = 0;
  std::size_t flat = 0;
  for (const auto& d : days) {
    s.peak_reduction_pct += d.stats.peak_reduction_pct;
    s.base_increase_pct += d.stats.base_increase_pct;
    s.sd_reduction_pct += d.stats.sd_reduction_pct;
    if (d.fully_flat) ++flat;
    demand += std::accumulate(d.observed.begin(), d.observed.end(), 0.0);
    hours += d.observed.size();
  }
  const double n = static_cast<double>(days.size());
  s.peak_reduction_pct /= n;
  s.base_increase_pct /= n;
  s.sd_reduction_pct /= n;
  s.flattenable_share_pct = 100.0 * static_cast<double>(flat) / n;
  s.mean_demand = hours > 0 ? demand / static_cast<double>(hours) : 0.0;
  return s;
}

namespace {

OverallSummary summarize_overall(const DayReference& ref, double mean_observed, std::span<const double> observed,
                                 std::span<const double> flattened) {
  OverallSummary s;
  s.mean_demand = mean_observed;
  const DayStats stats = day_stats(ref, flattened);
  s.peak_reduction_pct = stats.peak_reduction_pct;
  s.base_increase_pct = stats.base_increase_pct;
  s.sd_reduction_pct = stats.sd_reduction_pct;
  const auto [olo, ohi] = std::minmax_element(observed.begin(), observed.end());
  const auto [flo, fhi] = std::minmax_element(flattened.begin(), flattened.end());
  if (mean_observed > 0.0) {
    s.raw_base_rel_mean_pct = 100.0 * *olo / mean_observed;
    s.raw_peak_rel_mean_pct = 100.0 * *ohi / mean_observed;
    s.base_rel_mean_pct = 100.0 * *flo / mean_observed;
    s.peak_rel_mean_pct = 100.0 * *fhi / mean_observed;
  }
  return s;
}

}  // namespace

OverallSummary overall_stats(std::span<const double> observed, std::span<const double> flattened) {
  if (observed.size() != flattened.size() || observed.empty()) throw InputError("overall_stats: length mismatch");
  const double mean = std::accumulate(observed.begin(), observed.end(), 0.0) / static_cast<double>(observed.size());
  return summarize_overall(observed_reference(observed), mean, observed, flattened);
}

OverallSummary overall_stats(std::span<const FlattenedDay> days) {
  if (days.empty()) throw InputError("overall_stats needs at least one day");
  std::vector<double> observed, flattened;
  const std::size_t members = days.front().member_observed.size();
  std::vector<std::vector<double>> member_series(members);
  for (const auto& d : days) {
    observed.insert(observed.end(), d.observed.begin(), d.observed.end());
    flattened.insert(flattened.end(), d.profile.begin(), d.profile.end());
    if (d.member_observed.size() != members) throw InputError("pooled days disagree on member count");
    for (std::size_t m = 0; m < members; ++m) {
      member_series[m].insert(member_series[m].end(), d.member_observed[m].begin(), d.member_observed[m].end());
    }
  }
  DayReference ref;
  if (members == 0) {
    ref = observed_reference(observed);
  } else {
    for (const auto& series : member_series) {
      const DayReference r = observed_reference(series);
      ref.peak += r.peak;
      ref.base += r.base;
      ref.sd += r.sd;
    }
  }
  const double mean = std::accumulate(observed.begin(), observed.end(), 0.0) / static_cast<double>(observed.size());
  return summarize_overall(ref, mean, observed, flattened);
}

namespace {

template <typename Summary, typename Flat>
CombinedSummary combine_impl(std::span<const Summary> summaries, Flat flattenable) {
  if (summaries.empty()) throw InputError("cannot average zero regions");
  CombinedSummary out;
  double weight = 0.0;
  for (const auto& s : summaries) weight += s.mean_demand;
  const double n = static_cast<double>(summaries.size());
  for (const auto& s : summaries) {
    const double w = weight > 0.0 ? s.mean_demand / weight : 1.0 / n;
    out.demand_weighted.peak_reduction_pct += w * s.peak_reduction_pct;
    out.demand_weighted.base_increase_pct += w * s.base_increase_pct;
    out.demand_weighted.sd_reduction_pct += w * s.sd_reduction_pct;
    out.demand_weighted.flattenable_share_pct += w * flattenable(s);
    out.unweighted.peak_reduction_pct += s.peak_reduction_pct / n;
    out.unweighted.base_increase_pct += s.base_increase_pct / n;
    out.unweighted.sd_reduction_pct += s.sd_reduction_pct / n;
    out.unweighted.flattenable_share_pct += flattenable(s) / n;
  }
  return out;
}

}  // namespace

CombinedSummary combine(std::span<const DailySummary> summaries) {
  return combine_impl(summaries, [](const DailySummary& s) { return s.flattenable_share_pct; });
}

CombinedSummary combine(std::span<const OverallSummary> summaries) {
  return combine_impl(summaries, [](const OverallSummary&) { return 0.0; });
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("percentile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("percentile rank must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

void PeakBaseAccumulator::add(std::span<const FlattenedDay> days, std::span<const FlattenedDay> historic) {
  if (days.size() != historic.size()) throw InputError("scenario and historic day counts differ");
  if (days.empty()) return;
  double total = 0.0;
  std::size_t hours = 0;
  for (const auto& d : historic) {
    total += std::accumulate(d.observed.begin(), d.observed.end(), 0.0);
    hours += d.observed.size();
  }
  const double overall_mean = total / static_cast<double>(hours);
  for (std::size_t i = 0; i < days.size(); ++i) {
    if (days[i].date != historic[i].date) throw InputError("scenario and historic days are not aligned");
    const auto& h = historic[i].observed;
    const double daily_mean = std::accumulate(h.begin(), h.end(), 0.0) / static_cast<double>(h.size());
    const auto [lo, hi] = std::minmax_element(days[i].profile.begin(), days[i].profile.end());
    base_daily_.push_back(100.0 * *lo / daily_mean);
    peak_daily_.push_back(100.0 * *hi / daily_mean);
    base_overall_.push_back(100.0 * *lo / overall_mean);
    peak_overall_.push_back(100.0 * *hi / overall_mean);
  }
}

PercentileTable PeakBaseAccumulator::summarize() const {
  if (base_daily_.empty()) throw InputError("no days to summarize");
  const auto family = [](const std::vector<double>& v) {
    PercentileFamily f;
    f.p1 = percentile(v, 0.01);
    f.p99 = percentile(v, 0.99);
    f.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    return f;
  };
  return {family(base_daily_), family(base_overall_), family(peak_daily_), family(peak_overall_)};
}

std::string to_string(Season season) {
  switch (season) {
    case Season::All: return "all";
    case Season::Winter: return "winter";
    case Season::Spring: return "spring";
    case Season::Summer: return "summer";
    case Season::Fall: return "fall";
  }
  return "all";
}

Season parse_season(const std::string& text) {
  if (text == "all") return Season::All;
  if (text == "winter") return Season::Winter;
  if (text == "spring") return Season::Spring;
  if (text == "summer") return Season::Summer;
  if (text == "fall" || text == "autumn") return Season::Fall;
  throw InputError("unknown season '" + text + "'");
}

Season season_of(std::chrono::year_month_day date) {
  const unsigned m = static_cast<unsigned>(date.month());
  if (m == 12 || m <= 2) return Season::Winter;
  if (m <= 5) return Season::Spring;
  if (m <= 8) return Season::Summer;
  return Season::Fall;
}

bool in_season(std::chrono::year_month_day date, Season season) {
  return season == Season::All || season_of(date) == season;
}

std::vector<FlattenedDay> seasonal_slice(std::span<const FlattenedDay> days, Season season) {
  std::vector<FlattenedDay> out;
  for (const auto& d : days) {
    if (in_season(d.date, season)) out.push_back(d);
  }
  return out;
}

std::vector<ProfileBin> demand_temperature_profile(std::span<const double> demand, std::span<const double> x,
                                                   double bin_width,
                                                   std::span<const std::chrono::year_month_day> dates) {
  if (demand.size() != x.size()) throw InputError("demand and temperature lengths differ");
  if (!dates.empty() && dates.size() != x.size()) throw InputError("dates and temperature lengths differ");
  if (!(bin_width > 0.0)) throw InputError("bin width must be positive");
  std::vector<std::size_t> rows;
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isfinite(x[i]) && std::isfinite(demand[i])) {
      rows.push_back(i);
      total += demand[i];
    }
  }
  if (rows.empty()) return {};
  const double mean = total / static_cast<double>(rows.size());
  const auto bin_of = [bin_width](double v) { return static_cast<long>(std::floor(v / bin_width)); };
  long lo = bin_of(x[rows.front()]), hi = lo;
  for (const std::size_t i : rows) {
    lo = std::min(lo, bin_of(x[i]));
    hi = std::max(hi, bin_of(x[i]));
  }
  std::vector<Season> seasons{Season::All};
  if (!dates.empty()) {
    seasons.insert(seasons.end(), {Season::Winter, Season::Spring, Season::Summer, Season::Fall});
  }
  std::vector<ProfileBin> out;
  for (const Season season : seasons) {
    const std::size_t bins = static_cast<std::size_t>(hi - lo + 1);
    std::vector<double> sums(bins, 0.0);
    std::vector<std::size_t> counts(bins, 0);
    for (const std::size_t i : rows) {
      if (!dates.empty() && !in_season(dates[i], season)) continue;
      const auto b = static_cast<std::size_t>(bin_of(x[i]) - lo);
      sums[b] += demand[i] / mean;
      ++counts[b];
    }
    for (std::size_t b = 0; b < bins; ++b) {
      ProfileBin bin;
      bin.season = season;
      bin.center = (static_cast<double>(lo + static_cast<long>(b)) + 0.5) * bin_width;
      bin.count = counts[b];
      if (counts[b] > 0) bin.mean_index = sums[b] / static_cast<double>(counts[b]);
      out.push_back(bin);
    }
  }
  return out;
}

}  // namespace gridflex
