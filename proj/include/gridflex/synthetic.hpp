#pragma once
// Synthetic fixtures with known truth: a 3-hourly temperature grid, regions,
// and hourly load drawn from the regression model itself.

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gridflex/regress.hpp"
#include "gridflex/shiftable.hpp"
#include "gridflex/weather.hpp"

namespace gridflex {

struct SyntheticSpec {
  int regions = 3;
  int cells_per_region = 2;
  int start_year = 2019;
  int years = 3;
  int grid_step_hours = 3;

  ModelSpec model{};
  double alpha_h = 0.037;
  double alpha_c = 0.044;
  double gamma_h = 0.0;  // used when model.include_climate_interactions
  double gamma_c = 0.0;
  double sigma = 0.02;   // log-demand noise SD

  // Temperature process per cell: annual and daily cosines plus AR(1) noise
  // at the grid step.
  double temp_mean_c = 14.0;
  double temp_spread_c = 6.0;  // cell means spread uniformly by ± this
  double seasonal_amplitude_c = 11.0;
  double diurnal_amplitude_c = 5.0;
  double ar_coefficient = 0.8;
  double ar_sd_c = 1.5;

  // Calendar shape of log demand before weather.
  double base_log_mw = 9.0;
  double daily_log_amplitude = 0.15;
  double annual_log_amplitude = 0.05;
  double weekend_log_drop = 0.06;

  std::uint64_t seed = 20190101;

  void validate() const;
};

struct SyntheticData {
  SyntheticSpec spec;
  TemperatureGrid grid;  // at grid_step_hours
  std::vector<RegionSpec> regions;
  NormalsTable normals;  // in-sample normals, used by interaction models
  std::vector<LoadSeries> load;
  std::vector<FittedDemandModel> truth;    // true coefficients per region
  std::vector<ShiftableSeries> truth_shares;  // alpha = 1 decomposition of the noisy load under the truth
};

SyntheticData generate_synthetic(const SyntheticSpec& spec);

// Writes grid.csv, regions.csv, load.csv, normals.csv, truth_shares.csv and
// truth_models.json into dir.
void write_synthetic(const SyntheticData& data, const std::filesystem::path& dir);

}  // namespace gridflex
