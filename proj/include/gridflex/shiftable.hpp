#pragma once
// Hard / flexible decomposition of observed load and the uniform-warming
// counterfactual.

#include <span>
#include <string>
#include <vector>

#include "gridflex/regress.hpp"
#include "gridflex/weather.hpp"

namespace gridflex {

struct ShiftableSeries {
  std::string region_id;
  Interconnect interconnect = Interconnect::East;
  int day_boundary_offset_hours = 0;
  double alpha = 1.0;
  std::vector<HourStamp> timestamps;
  std::vector<double> observed_mw;
  std::vector<double> hard_mw;      // observed - flexible
  std::vector<double> flexible_mw;  // alpha * temperature-sensitive load
  std::vector<double> share;        // flexible / observed

  // Observed load of each member region when this series is a pool; used as
  // the no-transmission reference in the flattening statistics.
  std::vector<std::vector<double>> member_observed_mw;

  std::size_t size() const { return timestamps.size(); }
};

struct ClimateScenario {
  double delta_t = 2.0;
};

// observed * (Ŷ|18°C) / (Ŷ|T), the ratio clamped to at most 1.
std::vector<double> hard_demand(const FittedDemandModel& model, const CalendarFeatures& cal,
                                const WeatherTerms& weather, std::span<const double> observed);

// flexible = alpha * (observed - hard), reported hard = observed - flexible.
ShiftableSeries shiftable_split(std::span<const double> hard, std::span<const double> observed, double alpha);

// Rescales the flexible component of a series built at series.alpha > 0.
ShiftableSeries with_alpha(const ShiftableSeries& series, double alpha);

struct ShiftableInputs {
  const FittedDemandModel* model = nullptr;
  const LoadSeries* load = nullptr;
  const RegionalWeather* weather = nullptr;
  Interconnect interconnect = Interconnect::East;
};

// Decomposition of the observed load on the model's training hours.
ShiftableSeries build_shiftable(const ShiftableInputs& inputs, double alpha);

struct ClimateShiftResult {
  LoadSeries shifted_load;
  ShiftableSeries shiftable;
};

// Warms every grid cell by scenario.delta_t, rebuilds the region's degree
// hours, and re-predicts: shifted log demand = fitted log at the warmed
// weather + the original log residual. Shares are taken against Ŷ|18°C.
// Interaction normals stay at their historical values.
ClimateShiftResult climate_shift(const FittedDemandModel& model, const TemperatureGrid& hourly_grid,
                                 const RegionSpec& region, const NormalsTable* normals, const ClimateScenario& scenario,
                                 double alpha, double threshold_c = kDefaultThresholdC);

// Demand-weighted mean of share over all hours of all series.
double demand_weighted_share(std::span<const ShiftableSeries> series);

}  // namespace gridflex
