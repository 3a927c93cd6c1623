#pragma once
// Gridded temperature handling: 3-hourly to hourly interpolation, per-cell
// degree hours and population-weighted regional aggregation.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridflex/time.hpp"

namespace gridflex {

inline constexpr double kDefaultThresholdC = 18.0;

enum class Interconnect { East, West, Ercot };

std::string to_string(Interconnect ic);
Interconnect parse_interconnect(const std::string& text);

struct GridCell {
  std::string cell_id;
  double latitude = 0.0;
  double longitude = 0.0;
};

// Temperatures in °C, one row per cell, one column per timestamp, stored
// row-major so each cell's series is contiguous.
struct TemperatureGrid {
  std::vector<GridCell> cells;
  std::vector<HourStamp> timestamps;
  std::vector<double> temps;

  std::size_t cell_count() const { return cells.size(); }
  std::size_t hour_count() const { return timestamps.size(); }
  std::span<const double> series(std::size_t cell) const {
    return {temps.data() + cell * timestamps.size(), timestamps.size()};
  }
  std::span<double> series(std::size_t cell) { return {temps.data() + cell * timestamps.size(), timestamps.size()}; }
  std::optional<std::size_t> find_cell(const std::string& cell_id) const;

  // Spacing between consecutive timestamps; throws InputError unless uniform.
  std::int64_t uniform_step_hours() const;
};

struct RegionSpec {
  std::string region_id;
  Interconnect interconnect = Interconnect::East;
  std::map<std::string, double> cell_weights;  // ordered by cell_id
  int day_boundary_offset_hours = 0;
};

struct CellNormals {
  double mean_cdh = 0.0;
  double mean_hdh = 0.0;
};
using NormalsTable = std::map<std::string, CellNormals>;

struct RegionalWeather {
  std::string region_id;
  std::vector<HourStamp> timestamps;
  std::vector<double> mean_temp_c;  // population-weighted mean temperature
  std::vector<double> cdh;
  std::vector<double> hdh;
  // Empty unless climate interactions were aggregated.
  std::vector<double> cdh_interaction;
  std::vector<double> hdh_interaction;
  double mean_cdh = 0.0;
  double mean_hdh = 0.0;

  bool has_interactions() const { return !cdh_interaction.empty(); }
};

struct DegreeHours {
  double cdh = 0.0;
  double hdh = 0.0;
};

DegreeHours degree_hours(double temp_c, double threshold_c = kDefaultThresholdC);

// Linear interpolation of a uniformly spaced grid onto every hour in
// [first, last] (defaulting to the sampled range). Sample marks are copied
// exactly; hours outside the sampled range repeat the nearest sample.
TemperatureGrid interpolate_to_hourly(const TemperatureGrid& grid, std::optional<HourStamp> first = std::nullopt,
                                      std::optional<HourStamp> last = std::nullopt);

// Degree hours per cell first, then the population-weighted mean over the
// region's cells in ascending cell_id order.
RegionalWeather aggregate_region(const TemperatureGrid& hourly, const RegionSpec& region,
                                 double threshold_c = kDefaultThresholdC);

// Per-cell time means of hourly degree hours over the whole grid.
NormalsTable in_sample_normals(const TemperatureGrid& hourly, double threshold_c = kDefaultThresholdC);

// aggregate_region plus the climate interaction columns: per-cell
// normal × hourly degree hours, formed at the cell and then weighted.
RegionalWeather climate_interaction_aggregates(const TemperatureGrid& hourly, const RegionSpec& region,
                                               const NormalsTable& normals,
                                               double threshold_c = kDefaultThresholdC);

// Uniform warming applied to every cell-hour.
TemperatureGrid shift_temperatures(const TemperatureGrid& grid, double delta_c);

}  // namespace gridflex
