#include <algorithm>
#include <cmath>
#include <iostream>

#include "gridflex/error.hpp"
#include "gridflex/kernels.hpp"
#include "gridflex/regress.hpp"

namespace gridflex {

std::size_t ModelSpec::tensor_count() const {
  return static_cast<std::size_t>(knots_hod) * static_cast<std::size_t>(knots_hoy) * kDaysOfWeek;
}

std::size_t ModelSpec::weather_count() const {
  if (!include_weather) return 0;
  return include_climate_interactions ? 4 : 2;
}

void ModelSpec::validate() const {
  if (knots_hod < 3 || knots_hoy < 3) {
    throw InputError("model spec needs at least 3 knots per spline, got " + describe(*this));
  }
  if (include_climate_interactions && !include_weather) {
    throw InputError("climate interactions require the weather terms");
  }
}

std::string describe(const ModelSpec& spec) {
  std::string s = "K=" + std::to_string(spec.knots_hod) + ",L=" + std::to_string(spec.knots_hoy);
  if (!spec.include_weather) s += ",baseline";
  if (spec.include_climate_interactions) s += ",interactions";
  return s;
}

namespace {

const ModelSpec& validated(const ModelSpec& spec) {
  spec.validate();
  return spec;
}

}  // namespace

DesignBuilder::DesignBuilder(const ModelSpec& spec)
    : spec_(validated(spec)), hod_(spec_.knots_hod, kHodLo, kHodHi), hoy_(spec_.knots_hoy, kHoyLo, kHoyHi) {}

DesignBuilder::DesignBuilder(const ModelSpec& spec, std::vector<double> knots_hod, std::vector<double> knots_hoy)
    : spec_(spec), hod_(std::move(knots_hod)), hoy_(std::move(knots_hoy)) {
  spec_.validate();
  if (hod_.size() != spec_.knots_hod || hoy_.size() != spec_.knots_hoy) {
    throw InputError("knot vectors do not match model spec " + describe(spec_));
  }
}

void DesignBuilder::check(const CalendarFeatures& cal, const WeatherTerms& weather) const {
  const std::size_t n = cal.size();
  if (cal.hoy.size() != n || cal.dow.size() != n) throw InputError("calendar feature lengths differ");
  if (spec_.include_weather) {
    if (weather.hdh.size() != n || weather.cdh.size() != n) {
      throw InputError("weather length " + std::to_string(weather.hdh.size()) + " does not match calendar length " +
                       std::to_string(n));
    }
    if (spec_.include_climate_interactions &&
        (weather.hdh_interaction.size() != n || weather.cdh_interaction.size() != n)) {
      throw InputError("model uses climate interactions but the weather has none");
    }
  }
}

Eigen::MatrixXd DesignBuilder::build(const CalendarFeatures& cal, const WeatherTerms& weather,
                                     std::span<const std::size_t> rows) const {
  check(cal, weather);
  const std::size_t n = rows.empty() ? cal.size() : rows.size();
  const int k_count = spec_.knots_hod;
  const int l_count = spec_.knots_hoy;
  const Eigen::Index block = static_cast<Eigen::Index>(k_count) * l_count;
  const Eigen::Index tensor = static_cast<Eigen::Index>(spec_.tensor_count());
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(spec_.parameter_count()));
  std::vector<double> bh(static_cast<std::size_t>(k_count)), bd(static_cast<std::size_t>(l_count));
  std::vector<double> products(static_cast<std::size_t>(block));
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t src = rows.empty() ? r : rows[r];
    const int dow = cal.dow[src];
    if (dow < 1 || dow > kDaysOfWeek) throw InputError("day of week out of range");
    hod_.evaluate(cal.hod[src], bh);
    hoy_.evaluate(cal.hoy[src], bd);
    for (int l = 0; l < l_count; ++l) {
      kernels::scale(bd[l], bh, std::span<double>(products).subspan(static_cast<std::size_t>(l) * k_count, k_count));
    }
    const Eigen::Index offset = block * (dow - 1);
    const auto row = static_cast<Eigen::Index>(r);
    for (Eigen::Index c = 0; c < block; ++c) x(row, offset + c) = products[static_cast<std::size_t>(c)];
    if (spec_.include_weather) {
      x(row, tensor) = weather.hdh[src];
      x(row, tensor + 1) = weather.cdh[src];
      if (spec_.include_climate_interactions) {
        x(row, tensor + 2) = weather.hdh_interaction[src];
        x(row, tensor + 3) = weather.cdh_interaction[src];
      }
    }
  }
  return x;
}

double DesignBuilder::predict_row(const CalendarFeatures& cal, const WeatherTerms& weather, std::size_t row,
                                  std::span<const double> coefficients) const {
  const int k_count = spec_.knots_hod;
  const int l_count = spec_.knots_hoy;
  const std::size_t block = static_cast<std::size_t>(k_count) * l_count;
  std::vector<double> bh(static_cast<std::size_t>(k_count)), bd(static_cast<std::size_t>(l_count));
  hod_.evaluate(cal.hod[row], bh);
  hoy_.evaluate(cal.hoy[row], bd);
  const std::size_t offset = block * static_cast<std::size_t>(cal.dow[row] - 1);
  double value = 0.0;
  for (int l = 0; l < l_count; ++l) {
    const auto beta = coefficients.subspan(offset + static_cast<std::size_t>(l) * k_count, k_count);
    value += bd[l] * kernels::dot(bh, beta);
  }
  if (spec_.include_weather) {
    const std::size_t t = spec_.tensor_count();
    value += coefficients[t] * weather.hdh[row] + coefficients[t + 1] * weather.cdh[row];
    if (spec_.include_climate_interactions) {
      value += coefficients[t + 2] * weather.hdh_interaction[row] + coefficients[t + 3] * weather.cdh_interaction[row];
    }
  }
  return value;
}

Eigen::MatrixXd build_design(const CalendarFeatures& cal, const WeatherTerms& weather, const ModelSpec& spec) {
  return DesignBuilder(spec).build(cal, weather);
}

double r_squared(std::span<const double> observed, std::span<const double> predicted) {
  if (observed.size() != predicted.size() || observed.empty()) throw InputError("r_squared: length mismatch");
  double mean = 0.0;
  for (double y : observed) mean += y;
  mean /= static_cast<double>(observed.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
    ss_tot += (observed[i] - mean) * (observed[i] - mean);
  }
  if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

OlsFit fit_ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response, const OlsOptions& options) {
  const Eigen::Index n = design.rows();
  const Eigen::Index p = design.cols();
  if (n == 0) throw InputError("least squares with no rows");
  if (response.size() != n) throw InputError("design and response lengths differ");
  if (n < p) {
    throw InputError("least squares needs at least as many rows (" + std::to_string(n) + ") as columns (" +
                     std::to_string(p) + ")");
  }
  if (!design.allFinite() || !response.allFinite()) throw InputError("non-finite value in regression inputs");

  OlsFit fit;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
  const auto r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  const Eigen::VectorXd diag = qr.matrixQR().diagonal().cwiseAbs();
  const double max_diag = p > 0 ? diag.maxCoeff() : 0.0;
  fit.rank = (diag.array() > options.rank_tolerance * max_diag).count();
  fit.rank_deficient = fit.rank < p || max_diag == 0.0;

  if (!fit.rank_deficient) {
    const Eigen::VectorXd qty = (qr.householderQ().adjoint() * response).head(p);
    fit.coefficients = r.solve(qty);
    const Eigen::MatrixXd r_inv = r.solve(Eigen::MatrixXd::Identity(p, p));
    fit.xtx_inverse = r_inv * r_inv.transpose();
  } else {
    if (!options.allow_min_norm) {
      throw NumericalError("rank-deficient design (" + std::to_string(fit.rank) + " of " + std::to_string(p) +
                           " columns) and minimum-norm fallback disabled");
    }
    std::cerr << "warning: rank-deficient design (rank " << fit.rank << " of " << p
              << "); using the minimum-norm least-squares solution\n";
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(options.rank_tolerance);
    cod.compute(design);
    fit.coefficients = cod.solve(response);
    fit.rank = cod.rank();
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> gram;
    gram.setThreshold(options.rank_tolerance);
    gram.compute(design.transpose() * design);
    fit.xtx_inverse = gram.pseudoInverse();
  }
  fit.residuals = response - design * fit.coefficients;
  const std::vector<double> y(response.data(), response.data() + n);
  std::vector<double> yhat(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) yhat[static_cast<std::size_t>(i)] = response(i) - fit.residuals(i);
  fit.r2 = r_squared(y, yhat);
  fit.rmse = std::sqrt(fit.residuals.squaredNorm() / static_cast<double>(n));
  return fit;
}

double FittedDemandModel::alpha_h() const {
  if (!spec.include_weather) return 0.0;
  return coefficients.at(spec.tensor_count());
}

double FittedDemandModel::alpha_c() const {
  if (!spec.include_weather) return 0.0;
  return coefficients.at(spec.tensor_count() + 1);
}

std::optional<double> FittedDemandModel::gamma_h() const {
  if (!spec.include_climate_interactions) return std::nullopt;
  return coefficients.at(spec.tensor_count() + 2);
}

std::optional<double> FittedDemandModel::gamma_c() const {
  if (!spec.include_climate_interactions) return std::nullopt;
  return coefficients.at(spec.tensor_count() + 3);
}

std::span<const double> FittedDemandModel::tensor_coefficients() const {
  return std::span<const double>(coefficients).first(spec.tensor_count());
}

DesignBuilder FittedDemandModel::design_builder() const { return DesignBuilder(spec, knots_hod, knots_hoy); }

namespace {

struct TrainingRows {
  std::vector<HourStamp> timestamps;
  Eigen::VectorXd log_demand;
};

TrainingRows valid_rows(const LoadSeries& load) {
  if (load.valid.size() != load.size() || load.demand_mw.size() != load.size()) {
    throw InputError("region " + load.region_id + ": load columns have different lengths");
  }
  TrainingRows rows;
  std::vector<double> logs;
  for (std::size_t i = 0; i < load.size(); ++i) {
    if (load.valid[i] == 0) continue;
    const double d = load.demand_mw[i];
    if (!std::isfinite(d)) {
      throw InputError("region " + load.region_id + ": non-finite demand at " + format_rfc3339(load.timestamps[i]));
    }
    if (!(d > 0.0)) {
      throw InputError("region " + load.region_id + ": demand_mw > 0 violated at " +
                       format_rfc3339(load.timestamps[i]));
    }
    rows.timestamps.push_back(load.timestamps[i]);
    logs.push_back(std::log(d));
  }
  if (rows.timestamps.empty()) throw InputError("region " + load.region_id + ": every hour is masked");
  rows.log_demand = Eigen::Map<const Eigen::VectorXd>(logs.data(), static_cast<Eigen::Index>(logs.size()));
  return rows;
}

FittedDemandModel fit_rows(const std::string& region_id, const TrainingRows& rows, const WeatherTerms& weather,
                           const ModelSpec& spec, int offset, const FitOptions& options) {
  const DesignBuilder builder(spec);
  const CalendarFeatures cal = calendar_features(rows.timestamps, offset);
  const Eigen::MatrixXd x = builder.build(cal, weather);
  const OlsFit ols = fit_ols(x, rows.log_demand, options.ols);

  FittedDemandModel model;
  model.region_id = region_id;
  model.spec = spec;
  model.day_boundary_offset_hours = offset;
  model.knots_hod = builder.hod_basis().knots();
  model.knots_hoy = builder.hoy_basis().knots();
  model.coefficients.assign(ols.coefficients.data(), ols.coefficients.data() + ols.coefficients.size());
  model.timestamps = rows.timestamps;
  model.residuals.assign(ols.residuals.data(), ols.residuals.data() + ols.residuals.size());
  model.in_sample_r2 = ols.r2;
  model.rmse = ols.rmse;
  model.rank = static_cast<std::size_t>(ols.rank);
  model.rank_deficient = ols.rank_deficient;
  if (options.nw_max_lag) {
    const Eigen::VectorXd se = newey_west_se(x, ols.residuals, ols.xtx_inverse, *options.nw_max_lag, rows.timestamps);
    model.se.assign(se.data(), se.data() + se.size());
    model.nw_max_lag = *options.nw_max_lag;
  }
  return model;
}

}  // namespace

FittedDemandModel fit_model(const LoadSeries& load, const RegionalWeather& weather, const ModelSpec& spec,
                            int day_boundary_offset_hours, const FitOptions& options) {
  spec.validate();
  const TrainingRows rows = valid_rows(load);
  WeatherTerms terms = spec.include_weather ? align_weather(rows.timestamps, weather)
                                            : WeatherTerms::zeros(rows.timestamps.size(), false);
  if (spec.include_climate_interactions && terms.hdh_interaction.empty()) {
    throw InputError("region " + load.region_id + ": interaction model requested but weather lacks interactions");
  }
  return fit_rows(load.region_id, rows, terms, spec, day_boundary_offset_hours, options);
}

FittedDemandModel baseline_fit(const LoadSeries& load, const ModelSpec& spec, int day_boundary_offset_hours,
                               const FitOptions& options) {
  ModelSpec base = spec;
  base.include_weather = false;
  base.include_climate_interactions = false;
  base.validate();
  const TrainingRows rows = valid_rows(load);
  return fit_rows(load.region_id, rows, WeatherTerms::zeros(rows.timestamps.size(), false), base,
                  day_boundary_offset_hours, options);
}

std::vector<double> predict_log(const FittedDemandModel& model, const CalendarFeatures& cal,
                                const WeatherTerms& weather) {
  const DesignBuilder builder = model.design_builder();
  if (model.coefficients.size() != model.spec.parameter_count()) {
    throw InputError("model coefficient count does not match its spec");
  }
  std::vector<double> out(cal.size());
  if (model.spec.include_weather && weather.size() != cal.size()) {
    throw InputError("weather and calendar lengths differ");
  }
  if (model.spec.include_climate_interactions && weather.hdh_interaction.size() != cal.size()) {
    throw InputError("model uses climate interactions but the weather has none");
  }
  for (std::size_t i = 0; i < cal.size(); ++i) out[i] = builder.predict_row(cal, weather, i, model.coefficients);
  return out;
}

std::vector<double> predict_level(const FittedDemandModel& model, const CalendarFeatures& cal,
                                  const WeatherTerms& weather) {
  auto out = predict_log(model, cal, weather);
  for (double& v : out) v = std::exp(v);
  return out;
}

}  // namespace gridflex
