#include "gridflex/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gridflex/error.hpp"
#include "gridflex/io.hpp"

namespace gridflex {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Interconnect kInterconnects[] = {Interconnect::East, Interconnect::West, Interconnect::Ercot};
const int kOffsets[] = {-5, -8, -6};

std::string padded(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03d", prefix, i);
  return buf;
}

// Calendar component of log demand, evaluated at the spline knots to give
// the tensor coefficients.
double calendar_log(const SyntheticSpec& s, double region_shift, double hod, double hoy, int dow) {
  const double daily = -s.daily_log_amplitude * std::cos(kTwoPi * (hod - 4.0) / 24.0);
  const double annual = s.annual_log_amplitude * std::cos(kTwoPi * (hoy - 1.0) / 8760.0);
  const double weekend = dow >= 6 ? -s.weekend_log_drop : 0.0;
  return s.base_log_mw + region_shift + daily + annual + weekend;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (regions < 1 || cells_per_region < 1) throw InputError("synthetic: need at least one region and cell");
  if (years < 1) throw InputError("synthetic: years must be >= 1");
  if (grid_step_hours < 1 || 24 % grid_step_hours != 0) throw InputError("synthetic: grid step must divide 24");
  if (!(sigma >= 0.0)) throw InputError("synthetic: sigma must be >= 0");
  if (!(ar_coefficient > -1.0 && ar_coefficient < 1.0)) throw InputError("synthetic: |ar_coefficient| must be < 1");
  model.validate();
  if (!model.include_weather) throw InputError("synthetic: the generating model needs weather terms");
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  SyntheticData data;
  data.spec = spec;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  using namespace std::chrono;
  const HourStamp first = hour_stamp(year{spec.start_year} / January / 1, 0);
  const HourStamp end = hour_stamp(year{spec.start_year + spec.years} / January / 1, 0);

  // Grid extends one step past the last hour so every hour interpolates.
  TemperatureGrid& grid = data.grid;
  for (HourStamp t = first; t <= end; t = t + spec.grid_step_hours) grid.timestamps.push_back(t);
  const int n_cells = spec.regions * spec.cells_per_region;
  grid.temps.resize(static_cast<std::size_t>(n_cells) * grid.timestamps.size());
  const double innovation_sd = spec.ar_sd_c * std::sqrt(1.0 - spec.ar_coefficient * spec.ar_coefficient);
  for (int c = 0; c < n_cells; ++c) {
    const int region = c / spec.cells_per_region;
    const double offset_hours = kOffsets[region % 3];
    const double mean = spec.temp_mean_c + spec.temp_spread_c * (2.0 * uniform(rng) - 1.0);
    grid.cells.push_back({padded("c", c), 30.0 + 5.0 * uniform(rng), -120.0 + 45.0 * uniform(rng)});
    auto temps = grid.series(static_cast<std::size_t>(c));
    double ar = spec.ar_sd_c * normal(rng);
    for (std::size_t h = 0; h < grid.timestamps.size(); ++h) {
      const LocalHour lh = to_local(grid.timestamps[h], static_cast<int>(offset_hours));
      const double year_phase = kTwoPi * (lh.hour_of_year - 1) / static_cast<double>(lh.leap_year ? 8784 : 8760);
      const double seasonal = -spec.seasonal_amplitude_c * std::cos(year_phase - kTwoPi * 15.0 / 365.0);
      const double diurnal = -spec.diurnal_amplitude_c * std::cos(kTwoPi * (lh.hour - 3) / 24.0);
      temps[h] = mean + seasonal + diurnal + ar;
      ar = spec.ar_coefficient * ar + innovation_sd * normal(rng);
    }
  }

  for (int r = 0; r < spec.regions; ++r) {
    RegionSpec region;
    region.region_id = padded("R", r);
    region.interconnect = kInterconnects[r % 3];
    region.day_boundary_offset_hours = kOffsets[r % 3];
    for (int k = 0; k < spec.cells_per_region; ++k) {
      region.cell_weights[padded("c", r * spec.cells_per_region + k)] = 0.5 + uniform(rng);
    }
    data.regions.push_back(std::move(region));
  }

  const TemperatureGrid hourly = interpolate_to_hourly(grid, first, end + (-1));
  data.normals = in_sample_normals(hourly);
  const bool inter = spec.model.include_climate_interactions;
  const DesignBuilder builder(spec.model);

  for (const auto& region : data.regions) {
    const RegionalWeather weather = inter ? climate_interaction_aggregates(hourly, region, data.normals)
                                          : aggregate_region(hourly, region);
    FittedDemandModel truth;
    truth.region_id = region.region_id;
    truth.spec = spec.model;
    truth.day_boundary_offset_hours = region.day_boundary_offset_hours;
    truth.knots_hod = builder.hod_basis().knots();
    truth.knots_hoy = builder.hoy_basis().knots();
    const double region_shift = 0.5 * uniform(rng);
    const std::size_t K = truth.knots_hod.size(), L = truth.knots_hoy.size();
    truth.coefficients.assign(spec.model.parameter_count(), 0.0);
    for (int d = 1; d <= kDaysOfWeek; ++d) {
      for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t k = 0; k < K; ++k) {
          truth.coefficients[k + K * l + K * L * static_cast<std::size_t>(d - 1)] =
              calendar_log(spec, region_shift, truth.knots_hod[k], truth.knots_hoy[l], d);
        }
      }
    }
    const std::size_t w = spec.model.tensor_count();
    truth.coefficients[w] = spec.alpha_h;
    truth.coefficients[w + 1] = spec.alpha_c;
    if (inter) {
      truth.coefficients[w + 2] = spec.gamma_h;
      truth.coefficients[w + 3] = spec.gamma_c;
    }
    truth.timestamps = hourly.timestamps;

    const CalendarFeatures cal = calendar_features(truth.timestamps, truth.day_boundary_offset_hours);
    const WeatherTerms terms = align_weather(truth.timestamps, weather);
    const auto mean_log = predict_log(truth, cal, terms);
    LoadSeries load;
    load.region_id = region.region_id;
    load.timestamps = truth.timestamps;
    load.valid.assign(truth.timestamps.size(), 1);
    truth.residuals.resize(truth.timestamps.size());
    for (std::size_t i = 0; i < mean_log.size(); ++i) {
      truth.residuals[i] = spec.sigma > 0.0 ? spec.sigma * normal(rng) : 0.0;
      load.demand_mw.push_back(std::exp(mean_log[i] + truth.residuals[i]));
    }

    ShiftableSeries shares =
        shiftable_split(hard_demand(truth, cal, terms, load.demand_mw), load.demand_mw, 1.0);
    shares.region_id = region.region_id;
    shares.interconnect = region.interconnect;
    shares.day_boundary_offset_hours = region.day_boundary_offset_hours;
    shares.timestamps = truth.timestamps;

    data.load.push_back(std::move(load));
    data.truth.push_back(std::move(truth));
    data.truth_shares.push_back(std::move(shares));
  }
  return data;
}

void write_synthetic(const SyntheticData& data, const std::filesystem::path& dir) {
  {
    auto out = io::open_output(dir / "grid.csv");
    io::write_grid(data.grid, out);
  }
  {
    auto out = io::open_output(dir / "regions.csv");
    io::write_regions(data.regions, out);
  }
  {
    auto out = io::open_output(dir / "load.csv");
    io::write_load(data.load, out);
  }
  {
    auto out = io::open_output(dir / "normals.csv");
    io::write_normals(data.normals, out);
  }
  {
    auto out = io::open_output(dir / "truth_shares.csv");
    io::write_shiftable(data.truth_shares, out);
  }
  io::write_models(data.truth, dir / "truth_models.json");
}

}  // namespace gridflex
