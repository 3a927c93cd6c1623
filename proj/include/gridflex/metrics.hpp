#pragma once
// Summary statistics of flattened load: daily and whole-horizon peak, base
// and SD changes, flattenable-day shares, percentile tables, seasonal
// slices and demand-temperature profiles.

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridflex/flatten.hpp"

namespace gridflex {

// Population SD (divides by n); exactly 0 for constant input.
double population_sd(std::span<const double> values);

// 100 * (1 - SD(flattened) / SD(raw)); 0 when SD(raw) is 0.
double sd_reduction(std::span<const double> raw, std::span<const double> flattened);

DayStats day_stats(const DayReference& reference, std::span<const double> profile);

struct DailySummary {
  std::size_t days = 0;
  double peak_reduction_pct = 0.0;
  double base_increase_pct = 0.0;
  double sd_reduction_pct = 0.0;
  double flattenable_share_pct = 0.0;
  double mean_demand = 0.0;  // mean observed load, the cross-region weight
};

// Unweighted means over the days of one region or pool.
DailySummary daily_stats(std::span<const FlattenedDay> days);

struct OverallSummary {
  double peak_reduction_pct = 0.0;
  double base_increase_pct = 0.0;
  double sd_reduction_pct = 0.0;
  double mean_demand = 0.0;
  double raw_base_rel_mean_pct = 0.0;
  double raw_peak_rel_mean_pct = 0.0;
  double base_rel_mean_pct = 0.0;  // flattened
  double peak_rel_mean_pct = 0.0;  // flattened
};

// Peak, base and SD computed once over the whole horizon.
OverallSummary overall_stats(std::span<const double> observed, std::span<const double> flattened);
// Same over the concatenated days; pooled days use the summed member values
// as the no-transmission reference.
OverallSummary overall_stats(std::span<const FlattenedDay> days);

struct RegionalAverage {
  double peak_reduction_pct = 0.0;
  double base_increase_pct = 0.0;
  double sd_reduction_pct = 0.0;
  double flattenable_share_pct = 0.0;
};

struct CombinedSummary {
  RegionalAverage demand_weighted;
  RegionalAverage unweighted;
};

CombinedSummary combine(std::span<const DailySummary> summaries);
CombinedSummary combine(std::span<const OverallSummary> summaries);

// Linear interpolation between order statistics, inclusive (q in [0, 1]).
double percentile(std::vector<double> values, double q);

struct PercentileFamily {
  double p1 = 0.0;
  double mean = 0.0;
  double p99 = 0.0;
};

struct PercentileTable {
  PercentileFamily base_daily;
  PercentileFamily base_overall;
  PercentileFamily peak_daily;
  PercentileFamily peak_overall;
};

// Daily peaks and bases in percent of the historic same-day mean and of the
// historic whole-horizon mean, pooled across every group appended.
class PeakBaseAccumulator {
 public:
  // `historic` holds the unflattened baseline days matching `days` by date.
  void add(std::span<const FlattenedDay> days, std::span<const FlattenedDay> historic);
  void add(std::span<const FlattenedDay> days) { add(days, days); }
  PercentileTable summarize() const;
  std::size_t size() const { return base_daily_.size(); }

 private:
  std::vector<double> base_daily_, base_overall_, peak_daily_, peak_overall_;
};

enum class Season { All, Winter, Spring, Summer, Fall };

std::string to_string(Season season);
Season parse_season(const std::string& text);
// Meteorological seasons by month: DJF, MAM, JJA, SON.
Season season_of(std::chrono::year_month_day date);
bool in_season(std::chrono::year_month_day date, Season season);
std::vector<FlattenedDay> seasonal_slice(std::span<const FlattenedDay> days, Season season);

struct ProfileBin {
  Season season = Season::All;
  double center = 0.0;
  std::optional<double> mean_index;  // demand / mean demand; empty bins have none
  std::size_t count = 0;
};

// Mean demand index within bins of `bin_width` over x (temperature or degree
// hours). With dates supplied, per-season bins follow the all-season ones.
std::vector<ProfileBin> demand_temperature_profile(std::span<const double> demand, std::span<const double> x,
                                                   double bin_width,
                                                   std::span<const std::chrono::year_month_day> dates = {});

}  // namespace gridflex
