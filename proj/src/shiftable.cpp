#include "gridflex/shiftable.hpp"

#include <algorithm>
#include <cmath>

#include "gridflex/error.hpp"

namespace gridflex {
namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0, 1], got " + std::to_string(alpha));
}

// exp(log Ŷ|18 - log Ŷ|T) clamped to at most 1.
std::vector<double> hard_ratio(const FittedDemandModel& model, const CalendarFeatures& cal,
                               const WeatherTerms& weather) {
  const auto at_temp = predict_log(model, cal, weather);
  const auto at_18 = predict_log(model, cal, WeatherTerms::zeros(cal.size(), model.spec.include_climate_interactions));
  std::vector<double> ratio(cal.size());
  for (std::size_t i = 0; i < ratio.size(); ++i) ratio[i] = std::min(1.0, std::exp(at_18[i] - at_temp[i]));
  return ratio;
}

}  // namespace

std::vector<double> hard_demand(const FittedDemandModel& model, const CalendarFeatures& cal,
                                const WeatherTerms& weather, std::span<const double> observed) {
  if (observed.size() != cal.size()) throw InputError("observed demand and calendar lengths differ");
  auto hard = hard_ratio(model, cal, weather);
  for (std::size_t i = 0; i < hard.size(); ++i) hard[i] *= observed[i];
  return hard;
}

ShiftableSeries shiftable_split(std::span<const double> hard, std::span<const double> observed, double alpha) {
  check_alpha(alpha);
  if (hard.size() != observed.size()) throw InputError("hard and observed demand lengths differ");
  ShiftableSeries s;
  s.alpha = alpha;
  s.observed_mw.assign(observed.begin(), observed.end());
  s.hard_mw.resize(observed.size());
  s.flexible_mw.resize(observed.size());
  s.share.resize(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (hard[i] > observed[i] * (1.0 + 1e-12)) {
      throw InputError("hard demand exceeds observed demand at row " + std::to_string(i));
    }
    const double sensitive = std::max(0.0, observed[i] - hard[i]);
    s.flexible_mw[i] = alpha * sensitive;
    s.hard_mw[i] = observed[i] - s.flexible_mw[i];
    s.share[i] = observed[i] > 0.0 ? s.flexible_mw[i] / observed[i] : 0.0;
  }
  return s;
}

ShiftableSeries with_alpha(const ShiftableSeries& series, double alpha) {
  check_alpha(alpha);
  if (!(series.alpha > 0.0)) throw InputError("cannot rescale a series built with alpha = 0");
  ShiftableSeries out = series;
  out.alpha = alpha;
  const double factor = alpha / series.alpha;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.flexible_mw[i] = series.flexible_mw[i] * factor;
    if (out.flexible_mw[i] > out.observed_mw[i]) out.flexible_mw[i] = out.observed_mw[i];
    out.hard_mw[i] = out.observed_mw[i] - out.flexible_mw[i];
    out.share[i] = out.observed_mw[i] > 0.0 ? out.flexible_mw[i] / out.observed_mw[i] : 0.0;
  }
  return out;
}

ShiftableSeries build_shiftable(const ShiftableInputs& inputs, double alpha) {
  if (inputs.model == nullptr || inputs.load == nullptr || inputs.weather == nullptr) {
    throw InputError("build_shiftable: model, load and weather are required");
  }
  const FittedDemandModel& model = *inputs.model;
  const LoadSeries& load = *inputs.load;

  // Observed demand on the training hours, matched by timestamp.
  std::vector<double> observed;
  observed.reserve(model.timestamps.size());
  std::size_t j = 0;
  for (const HourStamp t : model.timestamps) {
    while (j < load.size() && load.timestamps[j] < t) ++j;
    if (j == load.size() || load.timestamps[j] != t || load.valid[j] == 0) {
      throw InputError("region " + model.region_id + ": no valid load at model hour " + format_rfc3339(t));
    }
    observed.push_back(load.demand_mw[j]);
  }
  const CalendarFeatures cal = calendar_features(model.timestamps, model.day_boundary_offset_hours);
  const WeatherTerms weather = model.spec.include_weather
                                   ? align_weather(model.timestamps, *inputs.weather)
                                   : WeatherTerms::zeros(model.timestamps.size(), false);
  const auto hard = hard_demand(model, cal, weather, observed);
  ShiftableSeries s = shiftable_split(hard, observed, alpha);
  s.region_id = model.region_id;
  s.interconnect = inputs.interconnect;
  s.day_boundary_offset_hours = model.day_boundary_offset_hours;
  s.timestamps = model.timestamps;
  return s;
}

ClimateShiftResult climate_shift(const FittedDemandModel& model, const TemperatureGrid& hourly_grid,
                                 const RegionSpec& region, const NormalsTable* normals, const ClimateScenario& scenario,
                                 double alpha, double threshold_c) {
  check_alpha(alpha);
  if (model.residuals.size() != model.timestamps.size()) throw InputError("model residuals do not cover its hours");
  const TemperatureGrid warmed = shift_temperatures(hourly_grid, scenario.delta_t);
  const bool inter = model.spec.include_climate_interactions;
  if (inter && normals == nullptr) throw InputError("interaction model needs climate normals for the scenario");
  const RegionalWeather historic = inter ? climate_interaction_aggregates(hourly_grid, region, *normals, threshold_c)
                                         : aggregate_region(hourly_grid, region, threshold_c);
  const RegionalWeather shifted = inter ? climate_interaction_aggregates(warmed, region, *normals, threshold_c)
                                        : aggregate_region(warmed, region, threshold_c);

  const CalendarFeatures cal = calendar_features(model.timestamps, model.day_boundary_offset_hours);
  const WeatherTerms hist_terms = align_weather(model.timestamps, historic);
  const WeatherTerms warm_terms = align_weather(model.timestamps, shifted);
  const auto fitted = predict_log(model, cal, hist_terms);
  const auto warm = predict_log(model, cal, warm_terms);
  const auto at_18 = predict_log(model, cal, WeatherTerms::zeros(cal.size(), inter));

  ClimateShiftResult out;
  out.shifted_load.region_id = model.region_id;
  out.shifted_load.timestamps = model.timestamps;
  out.shifted_load.valid.assign(model.timestamps.size(), 1);
  std::vector<double> hard(model.timestamps.size());
  for (std::size_t i = 0; i < model.timestamps.size(); ++i) {
    // Re-add the residual on top of the warmed prediction; when the warmed
    // weather equals the historic one this reproduces the observed log.
    const double shifted_log = (fitted[i] + model.residuals[i]) + (warm[i] - fitted[i]);
    const double level = std::exp(shifted_log);
    out.shifted_load.demand_mw.push_back(level);
    hard[i] = level * std::min(1.0, std::exp(at_18[i] - warm[i]));
  }
  out.shiftable = shiftable_split(hard, out.shifted_load.demand_mw, alpha);
  out.shiftable.region_id = model.region_id;
  out.shiftable.interconnect = region.interconnect;
  out.shiftable.day_boundary_offset_hours = model.day_boundary_offset_hours;
  out.shiftable.timestamps = model.timestamps;
  return out;
}

double demand_weighted_share(std::span<const ShiftableSeries> series) {
  double flexible = 0.0, observed = 0.0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      flexible += s.flexible_mw[i];
      observed += s.observed_mw[i];
    }
  }
  return observed > 0.0 ? flexible / observed : 0.0;
}

}  // namespace gridflex
