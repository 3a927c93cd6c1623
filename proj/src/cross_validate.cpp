#include <algorithm>
#include <cmath>
#include <map>

#include "gridflex/error.hpp"
#include "gridflex/regress.hpp"

namespace gridflex {

std::vector<ModelSpec> SpecGrid::specs() const {
  std::vector<ModelSpec> out;
  for (int k : knots_hod) {
    for (int l : knots_hoy) {
      out.push_back(ModelSpec{k, l, include_weather, include_climate_interactions});
    }
  }
  return out;
}

std::vector<int> complete_years(std::span<const HourStamp> timestamps) {
  std::map<int, std::vector<HourStamp>> by_year;
  for (const HourStamp t : timestamps) {
    by_year[static_cast<int>(to_local(t, 0).date.year())].push_back(t);
  }
  std::vector<int> years;
  std::string missing;
  for (const auto& [y, stamps] : by_year) {
    const HourStamp start = hour_stamp(std::chrono::year{y} / std::chrono::January / 1, 0);
    const std::int64_t hours = hours_in_year(y);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(hours), 0);
    for (const HourStamp t : stamps) seen[static_cast<std::size_t>(t - start)] = 1;
    std::int64_t h = 0;
    while (h < hours) {
      if (seen[static_cast<std::size_t>(h)] != 0) {
        ++h;
        continue;
      }
      std::int64_t end = h;
      while (end + 1 < hours && seen[static_cast<std::size_t>(end + 1)] == 0) ++end;
      missing += (missing.empty() ? "" : "; ") + format_rfc3339(start + h) + " .. " + format_rfc3339(start + end);
      h = end + 1;
    }
    years.push_back(y);
  }
  if (!missing.empty()) throw InputError("incomplete calendar years, missing hours: " + missing);
  return years;
}

CvTable cross_validate(const LoadSeries& load, const RegionalWeather& weather, int day_boundary_offset_hours,
                       const SpecGrid& grid, const OlsOptions& options) {
  const auto specs = grid.specs();
  return cross_validate(load, weather, day_boundary_offset_hours, specs, options);
}

CvTable cross_validate(const LoadSeries& load, const RegionalWeather& weather, int day_boundary_offset_hours,
                       std::span<const ModelSpec> specs, const OlsOptions& options) {
  if (specs.empty()) throw InputError("cross-validation needs at least one model spec");
  const std::vector<int> years = complete_years(load.timestamps);
  if (years.size() < 2) throw InputError("cross-validation needs at least 2 complete calendar years");

  std::vector<HourStamp> stamps;
  std::vector<double> log_demand;
  std::vector<int> row_year;
  for (std::size_t i = 0; i < load.size(); ++i) {
    if (load.valid[i] == 0) continue;
    const double d = load.demand_mw[i];
    if (!std::isfinite(d) || !(d > 0.0)) {
      throw InputError("region " + load.region_id + ": demand_mw > 0 violated at " +
                       format_rfc3339(load.timestamps[i]));
    }
    stamps.push_back(load.timestamps[i]);
    log_demand.push_back(std::log(d));
    row_year.push_back(static_cast<int>(to_local(load.timestamps[i], 0).date.year()));
  }
  if (stamps.empty()) throw InputError("region " + load.region_id + ": every hour is masked");

  const CalendarFeatures cal = calendar_features(stamps, day_boundary_offset_hours);
  const bool any_weather = std::any_of(specs.begin(), specs.end(), [](const ModelSpec& s) { return s.include_weather; });
  const bool any_inter =
      std::any_of(specs.begin(), specs.end(), [](const ModelSpec& s) { return s.include_climate_interactions; });
  const WeatherTerms terms = any_weather ? align_weather(stamps, weather) : WeatherTerms::zeros(stamps.size(), false);
  if (any_inter && terms.hdh_interaction.empty()) {
    throw InputError("region " + load.region_id + ": interaction specs need interaction weather columns");
  }

  CvTable table;
  table.region_id = load.region_id;
  for (const ModelSpec& spec : specs) {
    const DesignBuilder builder(spec);
    CvResult result;
    result.spec = spec;
    for (const int held_out : years) {
      std::vector<std::size_t> train, test;
      for (std::size_t i = 0; i < stamps.size(); ++i) (row_year[i] == held_out ? test : train).push_back(i);
      if (test.empty()) continue;
      const Eigen::MatrixXd x_train = builder.build(cal, terms, train);
      Eigen::VectorXd y_train(static_cast<Eigen::Index>(train.size()));
      for (std::size_t i = 0; i < train.size(); ++i) y_train(static_cast<Eigen::Index>(i)) = log_demand[train[i]];
      const OlsFit fit = fit_ols(x_train, y_train, options);

      std::vector<double> observed, predicted;
      observed.reserve(test.size());
      predicted.reserve(test.size());
      for (const std::size_t i : test) {
        observed.push_back(log_demand[i]);
        predicted.push_back(builder.predict_row(
            cal, terms, i, std::span<const double>(fit.coefficients.data(), static_cast<std::size_t>(fit.coefficients.size()))));
      }
      result.fold_years.push_back(held_out);
      result.fold_r2.push_back(r_squared(observed, predicted));
    }
    double sum = 0.0;
    for (double r : result.fold_r2) sum += r;
    result.mean_r2 = sum / static_cast<double>(result.fold_r2.size());
    table.results.push_back(std::move(result));
  }

  constexpr double kTieTolerance = 1e-12;
  const CvResult* best = &table.results.front();
  for (const CvResult& r : table.results) {
    if (r.mean_r2 > best->mean_r2 + kTieTolerance ||
        (std::abs(r.mean_r2 - best->mean_r2) <= kTieTolerance &&
         r.spec.parameter_count() < best->spec.parameter_count())) {
      best = &r;
    }
  }
  table.best = best->spec;
  table.best_r2 = best->mean_r2;
  return table;
}

}  // namespace gridflex
