#pragma once
// Per-region log-demand regression: a tensor product of natural splines in
// hour of day and hour of year, split by day of week, plus degree-hour
// weather terms.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gridflex/spline.hpp"
#include "gridflex/time.hpp"
#include "gridflex/weather.hpp"

namespace gridflex {

inline constexpr double kHodLo = 1.0;
inline constexpr double kHodHi = 24.0;
inline constexpr double kHoyLo = 1.0;
inline constexpr double kHoyHi = 8760.0;
inline constexpr int kDaysOfWeek = 7;

struct LoadSeries {
  std::string region_id;
  std::vector<HourStamp> timestamps;
  std::vector<double> demand_mw;
  std::vector<std::uint8_t> valid;  // 0 marks a masked hour

  std::size_t size() const { return timestamps.size(); }
  std::size_t valid_count() const;
};

struct CalendarFeatures {
  std::vector<double> hod;  // 1..24
  std::vector<double> hoy;  // 1..8760, leap years mapped affinely
  std::vector<int> dow;     // ISO weekday 1..7

  std::size_t size() const { return hod.size(); }
};

CalendarFeatures calendar_features(std::span<const HourStamp> timestamps, int day_boundary_offset_hours);

// Degree-hour regressors aligned row-for-row with a calendar.
struct WeatherTerms {
  std::vector<double> hdh;
  std::vector<double> cdh;
  std::vector<double> hdh_interaction;  // empty unless interactions are used
  std::vector<double> cdh_interaction;

  std::size_t size() const { return hdh.size(); }
  static WeatherTerms zeros(std::size_t n, bool interactions);
};

// Picks the weather rows matching `timestamps`; throws when an hour is missing.
WeatherTerms align_weather(std::span<const HourStamp> timestamps, const RegionalWeather& weather);

struct ModelSpec {
  int knots_hod = 19;
  int knots_hoy = 6;
  bool include_weather = true;
  bool include_climate_interactions = false;

  std::size_t tensor_count() const;
  std::size_t weather_count() const;
  std::size_t parameter_count() const { return tensor_count() + weather_count(); }
  void validate() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

std::string describe(const ModelSpec& spec);

// Evaluates design rows. Column order: tensor block index
// k + K*l + K*L*(dow-1) (hour-of-day fastest), then HDH, CDH, and the
// HDH/CDH climate interactions when enabled.
class DesignBuilder {
 public:
  explicit DesignBuilder(const ModelSpec& spec);
  DesignBuilder(const ModelSpec& spec, std::vector<double> knots_hod, std::vector<double> knots_hoy);

  const ModelSpec& spec() const { return spec_; }
  const NaturalSplineBasis& hod_basis() const { return hod_; }
  const NaturalSplineBasis& hoy_basis() const { return hoy_; }

  Eigen::MatrixXd build(const CalendarFeatures& cal, const WeatherTerms& weather,
                        std::span<const std::size_t> rows = {}) const;
  // Linear predictor for one row without materializing the design row.
  double predict_row(const CalendarFeatures& cal, const WeatherTerms& weather, std::size_t row,
                     std::span<const double> coefficients) const;

 private:
  void check(const CalendarFeatures& cal, const WeatherTerms& weather) const;

  ModelSpec spec_;
  NaturalSplineBasis hod_;
  NaturalSplineBasis hoy_;
};

Eigen::MatrixXd build_design(const CalendarFeatures& cal, const WeatherTerms& weather, const ModelSpec& spec);

struct OlsOptions {
  // Rank-deficient designs fall back to the minimum-norm solution with a
  // warning; when false they raise NumericalError instead.
  bool allow_min_norm = true;
  double rank_tolerance = 1e-10;
};

struct OlsFit {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd residuals;
  // (X'X)^-1, or its pseudo-inverse for rank-deficient designs.
  Eigen::MatrixXd xtx_inverse;
  Eigen::Index rank = 0;
  bool rank_deficient = false;
  double r2 = 0.0;
  double rmse = 0.0;
};

// Householder QR least squares (no normal equations).
OlsFit fit_ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response, const OlsOptions& options = {});

// HAC covariance with Bartlett weights 1 - j/(max_lag+1). Rows closer than
// max_lag hours apart (by timestamp, when given) are paired; max_lag = 0
// gives the White heteroskedasticity-consistent errors.
Eigen::VectorXd newey_west_se(const Eigen::MatrixXd& design, const Eigen::VectorXd& residuals,
                              const Eigen::MatrixXd& xtx_inverse, int max_lag,
                              std::span<const HourStamp> timestamps = {});

// Classical OLS errors s^2 (X'X)^-1, s^2 = RSS / (N - p).
Eigen::VectorXd classical_se(const Eigen::VectorXd& residuals, const Eigen::MatrixXd& xtx_inverse,
                             Eigen::Index parameters);

struct FittedDemandModel {
  std::string region_id;
  ModelSpec spec;
  int day_boundary_offset_hours = 0;
  std::vector<double> knots_hod;
  std::vector<double> knots_hoy;
  std::vector<double> coefficients;  // full vector in design column order
  std::vector<HourStamp> timestamps;  // training hours
  std::vector<double> residuals;      // log-space residuals on training hours
  std::vector<double> se;             // Newey-West standard errors, empty if not computed
  int nw_max_lag = 0;
  double in_sample_r2 = 0.0;
  double rmse = 0.0;
  std::optional<double> cv_r2;
  std::size_t rank = 0;
  bool rank_deficient = false;

  double alpha_h() const;
  double alpha_c() const;
  std::optional<double> gamma_h() const;
  std::optional<double> gamma_c() const;
  std::span<const double> tensor_coefficients() const;
  DesignBuilder design_builder() const;
};

struct FitOptions {
  OlsOptions ols;
  std::optional<int> nw_max_lag = 24;  // nullopt skips the Newey-West pass
};

// Drops masked hours, regresses log demand, and records residuals and
// diagnostics.
FittedDemandModel fit_model(const LoadSeries& load, const RegionalWeather& weather, const ModelSpec& spec,
                            int day_boundary_offset_hours, const FitOptions& options = {});

// Same with the weather columns removed.
FittedDemandModel baseline_fit(const LoadSeries& load, const ModelSpec& spec, int day_boundary_offset_hours,
                               const FitOptions& options = {});

std::vector<double> predict_log(const FittedDemandModel& model, const CalendarFeatures& cal,
                                const WeatherTerms& weather);
std::vector<double> predict_level(const FittedDemandModel& model, const CalendarFeatures& cal,
                                  const WeatherTerms& weather);

double r_squared(std::span<const double> observed, std::span<const double> predicted);

struct CvResult {
  ModelSpec spec;
  std::vector<int> fold_years;
  std::vector<double> fold_r2;
  double mean_r2 = 0.0;
};

struct CvTable {
  std::string region_id;
  std::vector<CvResult> results;
  ModelSpec best;
  double best_r2 = 0.0;
};

struct SpecGrid {
  std::vector<int> knots_hod{6, 10, 14, 19, 24};
  std::vector<int> knots_hoy{4, 6, 9, 12};
  bool include_weather = true;
  bool include_climate_interactions = false;

  std::vector<ModelSpec> specs() const;
};

// Leave-one-calendar-year-out validation over every complete UTC year in
// the load series. Each fold trains on the other years and scores R² on the
// held-out year's log demand. The best spec has the highest mean R², ties
// going to fewer parameters.
CvTable cross_validate(const LoadSeries& load, const RegionalWeather& weather, int day_boundary_offset_hours,
                       const SpecGrid& grid, const OlsOptions& options = {});
CvTable cross_validate(const LoadSeries& load, const RegionalWeather& weather, int day_boundary_offset_hours,
                       std::span<const ModelSpec> specs, const OlsOptions& options = {});

// Complete UTC calendar years covered by the series; throws InputError
// listing missing spans when any covered year is incomplete.
std::vector<int> complete_years(std::span<const HourStamp> timestamps);

}  // namespace gridflex
