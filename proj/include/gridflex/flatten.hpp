#pragma once
// Within-day load leveling by water-filling, regional pooling and α sweeps.

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gridflex/shiftable.hpp"

namespace gridflex {

inline constexpr int kDefaultDayLength = 24;
inline constexpr int kDefaultPoolOffsetHours = -5;

// No-transmission reference statistics of a day: peak, base and SD of the
// observed load, or the sums of the member regions' values for a pool.
struct DayReference {
  double peak = 0.0;
  double base = 0.0;
  double sd = 0.0;
};

struct DayProfile {
  std::string pool_id;
  std::chrono::year_month_day date{};
  std::vector<double> hard;
  std::vector<double> observed;
  double flex_total = 0.0;
  DayReference reference;
};

struct DayStats {
  double peak_reduction_pct = 0.0;
  double base_increase_pct = 0.0;
  double sd_reduction_pct = 0.0;
};

struct FlattenedDay {
  std::string pool_id;
  std::chrono::year_month_day date{};
  std::vector<double> observed;
  std::vector<double> hard;
  std::vector<double> profile;
  double level = 0.0;
  bool fully_flat = false;
  DayReference reference;
  DayStats stats;
  // Member-region observed load over the same hours when the day is pooled.
  std::vector<std::vector<double>> member_observed;
};

struct WaterFill {
  std::vector<double> profile;
  double level = 0.0;
  std::size_t filled_hours = 0;
};

// Raises the lowest hard hours to a common level until flex_total is spent.
// With h sorted ascending, level = min_k (h_1 + .. + h_k + flex_total) / k,
// taking the largest minimizing k; hours with hard <= level get the level.
WaterFill water_fill(std::span<const double> hard, double flex_total);

DayReference observed_reference(std::span<const double> observed);

FlattenedDay flatten_day(const DayProfile& day);

struct FlattenSeriesResult {
  std::vector<FlattenedDay> days;
  std::size_t skipped_days = 0;
};

// Splits the series into fixed-offset local days and flattens every
// complete one; incomplete days are skipped and counted.
FlattenSeriesResult flatten_series(const ShiftableSeries& series, int day_length = kDefaultDayLength);

enum class PoolLevel { Region, Interconnect, Nation };

std::string to_string(PoolLevel level);
PoolLevel parse_pool_level(const std::string& text);

// Sums hard and flexible load per UTC hour across members with identical
// hourly coverage. The pool's day boundary is reference_offset_hours.
ShiftableSeries pool_regions(std::span<const ShiftableSeries> members, const std::string& pool_id,
                             int reference_offset_hours = kDefaultPoolOffsetHours);

// Region level returns the inputs; interconnect level one pool per
// interconnect present; nation level a single pool.
std::vector<ShiftableSeries> pool_by_level(std::span<const ShiftableSeries> regions, PoolLevel level,
                                           int reference_offset_hours = kDefaultPoolOffsetHours);

std::vector<double> default_alpha_grid();

struct AlphaCurvePoint {
  double alpha = 0.0;
  double daily_sd_reduction_pct = 0.0;    // mean over days
  double overall_sd_reduction_pct = 0.0;  // whole-horizon SD
};

// SD reduction as a function of α for a series whose flexible component was
// built at series.alpha > 0. Throws NumericalError if the daily curve ever
// decreases by more than 1e-9 as α grows.
std::vector<AlphaCurvePoint> alpha_sweep(const ShiftableSeries& series, std::span<const double> alphas);

}  // namespace gridflex
