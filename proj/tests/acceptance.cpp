// Acceptance checks: one PASS/FAIL line per criterion, tolerances fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "gridflex/error.hpp"
#include "gridflex/flatten.hpp"
#include "gridflex/io.hpp"
#include "gridflex/metrics.hpp"
#include "gridflex/regress.hpp"
#include "gridflex/shiftable.hpp"
#include "gridflex/spline.hpp"
#include "gridflex/synthetic.hpp"
#include "gridflex/weather.hpp"
#include "shape_check.hpp"

using namespace gridflex;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double pop_sd(std::span<const double> v) {
  long double m = 0;
  for (double x : v) m += x;
  m /= v.size();
  long double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return static_cast<double>(std::sqrt(ss / v.size()));
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// 1. Degree hours, exact.
Outcome degree_hour_suite() {
  bool ok = true;
  const auto a = degree_hours(20.0), b = degree_hours(18.0), c = degree_hours(10.0);
  ok = ok && a.cdh == 2.0 && a.hdh == 0.0;
  ok = ok && b.cdh == 0.0 && b.hdh == 0.0;
  ok = ok && c.cdh == 0.0 && c.hdh == 8.0;
  TemperatureGrid g;
  g.cells = {{"a", 40.0, -100.0}, {"b", 41.0, -100.0}};
  g.timestamps = {parse_rfc3339("2019-07-01T00:00:00Z")};
  g.temps = {16.0, 20.0};
  RegionSpec r;
  r.region_id = "R";
  r.cell_weights = {{"a", 1.0}, {"b", 1.0}};
  const auto w = aggregate_region(g, r);
  ok = ok && w.cdh[0] == 1.0 && w.hdh[0] == 1.0;
  const auto naive = degree_hours(0.5 * (16.0 + 20.0));
  ok = ok && naive.cdh == 0.0 && naive.hdh == 0.0;
  return {ok, "20->(2,0) 18->(0,0) 10->(0,8); 16/20 region (1,1) vs naive (0,0); tol 0"};
}

DayProfile random_day(std::mt19937_64& rng, std::size_t n) {
  DayProfile d;
  const double scale = uniform(rng, 1.0, 1000.0);
  d.hard.resize(n);
  for (auto& h : d.hard) h = scale * uniform(rng, 0.0, 1.0);
  d.flex_total = scale * n * uniform(rng, 0.0, 0.8);
  // Observed load: the flexible energy spread at random over the hours.
  d.observed = d.hard;
  double left = d.flex_total;
  for (std::size_t h = 0; h + 1 < n; ++h) {
    const double take = left * uniform(rng, 0.0, 0.5);
    d.observed[h] += take;
    left -= take;
  }
  d.observed[n - 1] += left;
  d.reference = observed_reference(d.observed);
  return d;
}

// 2. Water-filling against random feasible alternatives.
Outcome flattening_oracle() {
  std::mt19937_64 rng(2001);
  std::size_t alternatives = 0, sd_fail = 0, energy_fail = 0, feasibility_fail = 0;
  double worst_gap = -1e300;
  for (int inst = 0; inst < 1000; ++inst) {
    const std::size_t n = 3 + rng() % 22;
    const DayProfile d = random_day(rng, n);
    const FlattenedDay f = flatten_day(d);
    const double total = std::accumulate(d.hard.begin(), d.hard.end(), 0.0) + d.flex_total;
    const double energy = std::accumulate(f.profile.begin(), f.profile.end(), 0.0);
    if (std::abs(energy - total) > 1e-9 * total) ++energy_fail;
    for (std::size_t h = 0; h < n; ++h) {
      if (f.profile[h] < d.hard[h]) ++feasibility_fail;
    }
    const double sd_opt = pop_sd(f.profile);
    std::vector<double> x(n);
    for (int k = 0; k < 1000; ++k) {
      const int kind = k % 3;
      if (kind == 0) {
        // Random split of the budget (flat Dirichlet).
        std::vector<double> e(n);
        double s = 0.0;
        for (auto& v : e) s += (v = -std::log(uniform(rng, 1e-300, 1.0)));
        for (std::size_t h = 0; h < n; ++h) x[h] = d.hard[h] + d.flex_total * e[h] / s;
      } else if (kind == 1) {
        // Budget on a random subset of hours.
        std::vector<double> e(n, 0.0);
        double s = 0.0;
        for (auto& v : e) {
          if (rng() % 3 == 0) s += (v = uniform(rng, 0.0, 1.0));
        }
        if (s == 0.0) {
          e[rng() % n] = 1.0;
          s = 1.0;
        }
        for (std::size_t h = 0; h < n; ++h) x[h] = d.hard[h] + d.flex_total * e[h] / s;
      } else {
        // Small feasible move away from the water-filled profile.
        x = f.profile;
        const std::size_t i = rng() % n, j = rng() % n;
        const double room = x[i] - d.hard[i];
        const double delta = room * uniform(rng, 0.0, 1.0) * (rng() % 2 ? 1.0 : 1e-6);
        x[i] -= delta;
        x[j] += delta;
      }
      const double sd_alt = pop_sd(x);
      const double gap = sd_opt - sd_alt;
      worst_gap = std::max(worst_gap, gap / std::max(sd_alt, 1e-300));
      if (gap > 1e-9 * std::max(sd_alt, 1e-12 * total / n)) ++sd_fail;
      ++alternatives;
    }
  }
  const bool ok = sd_fail == 0 && energy_fail == 0 && feasibility_fail == 0;
  return {ok, std::to_string(alternatives) + " alternatives; SD violations " + std::to_string(sd_fail) +
                  ", energy violations " + std::to_string(energy_fail) + ", infeasible hours " +
                  std::to_string(feasibility_fail) + "; worst relative SD gap " + fmt("%.3g", worst_gap) +
                  " (tol 1e-9)"};
}

// 3. fully_flat iff max(hard) <= mean(observed).
Outcome flattenability() {
  std::mt19937_64 rng(3001);
  std::size_t flat = 0, not_flat = 0, mismatch = 0, boundary = 0;
  for (int inst = 0; inst < 5000; ++inst) {
    const std::size_t n = 3 + rng() % 22;
    DayProfile d;
    d.observed.resize(n);
    d.hard.resize(n);
    const double share_cap = uniform(rng, 0.0, 0.9);
    for (std::size_t h = 0; h < n; ++h) {
      d.observed[h] = uniform(rng, 50.0, 150.0);
      d.hard[h] = d.observed[h] * (1.0 - uniform(rng, 0.0, share_cap));
      d.flex_total += d.observed[h] - d.hard[h];
    }
    d.reference = observed_reference(d.observed);
    const FlattenedDay f = flatten_day(d);
    long double mean = 0;
    for (double v : d.observed) mean += v;
    mean /= n;
    const double max_hard = *std::max_element(d.hard.begin(), d.hard.end());
    if (std::abs(max_hard - static_cast<double>(mean)) <= 1e-12 * static_cast<double>(mean)) {
      ++boundary;
      continue;
    }
    const bool expected = max_hard <= mean;
    (expected ? flat : not_flat) += 1;
    if (f.fully_flat != expected) ++mismatch;
  }
  return {mismatch == 0 && flat > 0 && not_flat > 0,
          std::to_string(flat) + " flattenable, " + std::to_string(not_flat) + " not, " + std::to_string(mismatch) +
              " mismatches, " + std::to_string(boundary) + " within 1e-12 of the boundary"};
}

ShiftableSeries random_series(std::mt19937_64& rng, const std::string& id, HourStamp first, std::size_t hours,
                              double phase) {
  ShiftableSeries s;
  s.region_id = id;
  s.alpha = 1.0;
  s.day_boundary_offset_hours = 0;
  const double scale = uniform(rng, 100.0, 1000.0);
  const double share = uniform(rng, 0.05, 0.4);
  for (std::size_t i = 0; i < hours; ++i) {
    s.timestamps.push_back(first + static_cast<std::int64_t>(i));
    const double shape = 1.0 + 0.3 * std::sin(2.0 * M_PI * (static_cast<double>(i % 24) + phase) / 24.0);
    const double obs = scale * shape * uniform(rng, 0.8, 1.2);
    const double flex = obs * share * uniform(rng, 0.0, 1.0);
    s.observed_mw.push_back(obs);
    s.flexible_mw.push_back(flex);
    s.hard_mw.push_back(obs - flex);
    s.share.push_back(flex / obs);
  }
  return s;
}

// 4. Monotonicity in α.
Outcome alpha_monotonicity() {
  std::mt19937_64 rng(4001);
  const auto alphas = default_alpha_grid();
  std::size_t violations = 0, checks = 0;
  for (int inst = 0; inst < 500; ++inst) {
    const auto s = random_series(rng, "R", parse_rfc3339("2019-01-01T00:00:00Z"), 24, uniform(rng, 0.0, 24.0));
    double prev_peak = 0.0, prev_base = 0.0, prev_sd = 0.0;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      const auto r = flatten_series(with_alpha(s, alphas[k]));
      const auto& day = r.days.at(0);
      const double peak = *std::max_element(day.profile.begin(), day.profile.end());
      const double base = *std::min_element(day.profile.begin(), day.profile.end());
      const double sd = day.stats.sd_reduction_pct;
      if (k > 0) {
        const double tol = 1e-9 * prev_peak;
        violations += peak > prev_peak + tol;
        violations += base < prev_base - tol;
        violations += sd < prev_sd - 1e-9;
        checks += 3;
      }
      prev_peak = peak;
      prev_base = base;
      prev_sd = sd;
    }
  }
  return {violations == 0, std::to_string(checks) + " adjacent-α comparisons over 500 days, " +
                               std::to_string(violations) + " violations (tol 1e-9)"};
}

// 5. Pooling dominance.
Outcome pooling_dominance() {
  std::mt19937_64 rng(5001);
  std::size_t days = 0, violations = 0;
  double worst = -1e300;
  const HourStamp first = parse_rfc3339("2019-01-01T00:00:00Z");
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t regions = 2 + rng() % 5;
    std::vector<ShiftableSeries> members;
    for (std::size_t r = 0; r < regions; ++r) {
      members.push_back(random_series(rng, "R" + std::to_string(r), first, 72, uniform(rng, 0.0, 24.0)));
    }
    const auto pooled = flatten_series(pool_regions(members, "pool", 0));
    std::vector<FlattenSeriesResult> single;
    for (const auto& m : members) single.push_back(flatten_series(m));
    for (std::size_t d = 0; d < pooled.days.size(); ++d) {
      std::vector<double> sum(24, 0.0);
      for (const auto& s : single) {
        for (std::size_t h = 0; h < 24; ++h) sum[h] += s.days.at(d).profile[h];
      }
      const double sd_pool = pop_sd(pooled.days[d].profile), sd_sum = pop_sd(sum);
      worst = std::max(worst, (sd_pool - sd_sum) / std::max(sd_sum, 1e-300));
      violations += sd_pool > sd_sum + 1e-9 * std::max(sd_sum, 1e-12 * sum[0]);
      ++days;
    }
  }
  return {violations == 0, std::to_string(days) + " pooled days over 200 instances, " + std::to_string(violations) +
                               " violations; worst relative excess " + fmt("%.3g", worst) + " (tol 1e-9)"};
}

struct RegionFit {
  RegionSpec region;
  LoadSeries load;
  RegionalWeather weather;
  FittedDemandModel model;
};

std::vector<RegionFit> fit_synthetic(const SyntheticData& data, std::optional<int> nw_lag) {
  const auto& t = data.load.front().timestamps;
  const auto hourly = interpolate_to_hourly(data.grid, t.front(), t.back());
  std::vector<RegionFit> out;
  FitOptions fo;
  fo.nw_max_lag = nw_lag;
  for (std::size_t r = 0; r < data.regions.size(); ++r) {
    RegionFit f{data.regions[r], data.load[r], aggregate_region(hourly, data.regions[r]), {}};
    f.model = fit_model(f.load, f.weather, data.spec.model, f.region.day_boundary_offset_hours, fo);
    out.push_back(std::move(f));
  }
  return out;
}

SyntheticSpec recovery_spec(double sigma) {
  SyntheticSpec s;
  s.regions = 3;
  s.years = 3;
  s.sigma = sigma;
  s.alpha_c = 0.044;
  s.alpha_h = 0.037;
  s.model = ModelSpec{19, 6, true, false};
  return s;
}

// 6. Coefficient recovery and out-of-sample fit.
Outcome regression_recovery(const SyntheticData& noisy, const std::vector<RegionFit>& noisy_fits,
                            const std::vector<RegionFit>& exact_fits) {
  bool ok = true;
  double worst_noisy = 0.0, worst_exact = 0.0, worst_cv = 1.0;
  for (const auto& f : noisy_fits) {
    const double ec = std::abs(f.model.alpha_c() / 0.044 - 1.0), eh = std::abs(f.model.alpha_h() / 0.037 - 1.0);
    worst_noisy = std::max({worst_noisy, ec, eh});
    const std::vector<ModelSpec> one{noisy.spec.model};
    const CvTable cv = cross_validate(f.load, f.weather, f.region.day_boundary_offset_hours, one);
    worst_cv = std::min(worst_cv, cv.best_r2);
  }
  for (const auto& f : exact_fits) {
    const double ec = std::abs(f.model.alpha_c() / 0.044 - 1.0), eh = std::abs(f.model.alpha_h() / 0.037 - 1.0);
    worst_exact = std::max({worst_exact, ec, eh});
  }
  ok = worst_noisy <= 0.05 && worst_cv >= 0.95 && worst_exact <= 1e-6;
  return {ok, "sigma 0.02: worst relative error " + fmt("%.4f", worst_noisy) + " (tol 0.05), min CV R2 " +
                  fmt("%.4f", worst_cv) + " (>= 0.95); sigma 0: worst relative error " + fmt("%.3g", worst_exact) +
                  " (tol 1e-6)"};
}

// 7. Shares against the generator and the zero-warming identity.
Outcome shiftable_share_oracle(const SyntheticData& exact, const std::vector<RegionFit>& fits) {
  double worst_share = 0.0, worst_shift = 0.0;
  const auto& t = exact.load.front().timestamps;
  const auto hourly = interpolate_to_hourly(exact.grid, t.front(), t.back());
  for (std::size_t r = 0; r < fits.size(); ++r) {
    const auto& f = fits[r];
    const auto s = build_shiftable({&f.model, &f.load, &f.weather, f.region.interconnect}, 1.0);
    const auto& truth = exact.truth_shares[r];
    if (s.size() != truth.size()) return {false, "share series length differs from the generator"};
    for (std::size_t i = 0; i < s.size(); ++i) worst_share = std::max(worst_share, std::abs(s.share[i] - truth.share[i]));
    const auto shifted = climate_shift(f.model, hourly, f.region, nullptr, ClimateScenario{0.0}, 1.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double a = shifted.shifted_load.demand_mw[i], b = f.load.demand_mw[i];
      worst_shift = std::max(worst_shift, std::abs(a - b) / std::abs(b));
    }
  }
  return {worst_share <= 1e-6 && worst_shift <= 1e-9,
          "max |share - truth| " + fmt("%.3g", worst_share) + " (tol 1e-6 abs); delta-T 0 max relative change " +
              fmt("%.3g", worst_shift) + " (tol 1e-9)"};
}

// 8. Residual orthogonality, spline C2, White oracle.
Outcome numerical_hygiene(const std::vector<RegionFit>& fits) {
  if (fits.empty()) return {false, "no fits to check"};
  double worst_orth = 0.0;
  for (const auto& f : fits) {
    const CalendarFeatures cal = calendar_features(f.model.timestamps, f.model.day_boundary_offset_hours);
    const WeatherTerms w = align_weather(f.model.timestamps, f.weather);
    const Eigen::MatrixXd x = f.model.design_builder().build(cal, w);
    const Eigen::Map<const Eigen::VectorXd> r(f.model.residuals.data(), static_cast<Eigen::Index>(f.model.residuals.size()));
    const Eigen::VectorXd xr = x.transpose() * r;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double scale = x.col(j).norm() * r.norm();
      if (scale > 0.0) worst_orth = std::max(worst_orth, std::abs(xr(j)) / scale);
    }
  }

  double worst_c2 = 0.0;
  for (const auto& [n, lo, hi] : {std::tuple{19, 1.0, 24.0}, std::tuple{6, 1.0, 8760.0}}) {
    const NaturalSplineBasis b(n, lo, hi);
    // The one-sided stencils are exact on a cubic piece; the step only sets rounding.
    const double spacing = (hi - lo) / (n - 1), h = 1e-2 * spacing;
    std::vector<double> buf(static_cast<std::size_t>(n));
    const auto at = [&](double x, std::size_t j) {
      b.evaluate(x, buf);
      return buf[j];
    };
    for (std::size_t i = 1; i + 1 < b.knots().size(); ++i) {
      const double k = b.knots()[i];
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        const double f0 = at(k, j);
        const double sl = 2 * (f0 - 2 * at(k - h, j) + at(k - 2 * h, j)) / (h * h) -
                          (f0 - 2 * at(k - 2 * h, j) + at(k - 4 * h, j)) / (4 * h * h);
        const double sr = 2 * (f0 - 2 * at(k + h, j) + at(k + 2 * h, j)) / (h * h) -
                          (f0 - 2 * at(k + 2 * h, j) + at(k + 4 * h, j)) / (4 * h * h);
        worst_c2 = std::max(worst_c2, std::abs(sl - sr) * spacing * spacing);
      }
    }
  }

  std::mt19937_64 rng(8001);
  std::normal_distribution<double> z;
  const Eigen::Index n = 500, p = 5;
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) x(i, j) = j == 0 ? 1.0 : z(rng);
    y(i) = x.row(i).sum() + (1.0 + std::abs(x(i, 1))) * z(rng);
  }
  const OlsFit fit = fit_ols(x, y);
  const Eigen::VectorXd se = newey_west_se(x, fit.residuals, fit.xtx_inverse, 0);
  const Eigen::MatrixXd bread = (x.transpose() * x).inverse();
  const Eigen::MatrixXd meat = x.transpose() * fit.residuals.array().square().matrix().asDiagonal() * x;
  const Eigen::VectorXd white = (bread * meat * bread).diagonal().cwiseSqrt();
  double worst_nw = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) worst_nw = std::max(worst_nw, std::abs(se(j) - white(j)) / white(j));

  return {worst_orth <= 1e-6 && worst_c2 <= 1e-6 && worst_nw <= 1e-8,
          "orthogonality " + fmt("%.3g", worst_orth) + " (tol 1e-6), C2 jump " + fmt("%.3g", worst_c2) +
              " (tol 1e-6), lag-0 vs White " + fmt("%.3g", worst_nw) + " (tol 1e-8)"};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GRIDFLEX_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 9 and 10 share the two CLI runs.
struct CliRuns {
  std::filesystem::path root;
  int status_a = -1, status_b = -1;
};

CliRuns cli_runs() {
  CliRuns c;
  c.root = std::filesystem::temp_directory_path() / ("gridflex_acceptance_" + std::to_string(::getpid()));
  std::filesystem::remove_all(c.root);
  const std::string common =
      "run --synthetic --years 2 --synthetic-regions 3 --synthetic-spec 6,4 --knots-hod 6,8 --knots-hoy 4 "
      "--delta-t 2 --out-dir ";
  c.status_a = run_cli(common + (c.root / "a").string());
  c.status_b = run_cli(common + (c.root / "b").string());
  return c;
}

Outcome determinism(const CliRuns& c) {
  if (c.status_a != 0 || c.status_b != 0) {
    return {false, "gridflex run exited " + std::to_string(c.status_a) + " / " + std::to_string(c.status_b)};
  }
  const std::string a = io::read_text(c.root / "a" / "manifest.json"), b = io::read_text(c.root / "b" / "manifest.json");
  const auto doc = nlohmann::json::parse(a);
  return {a == b, std::to_string(doc["artifacts"].size()) + " artifacts; manifests " +
                      (a == b ? "byte-identical" : "differ") + " (" + std::to_string(a.size()) + " bytes)"};
}

Outcome report_shape(const CliRuns& c) {
  if (c.status_a != 0) return {false, "no report: gridflex run failed"};
  std::ifstream golden(std::string(GRIDFLEX_GOLDEN_DIR) + "/report_shape.json");
  const auto shape = nlohmann::json::parse(golden);
  const auto doc = nlohmann::json::parse(io::read_text(c.root / "a" / "report" / "report.json"));
  auto errors = testing::shape_errors(doc, shape);
  // The grid must be complete, not just well typed.
  std::size_t metric_cells = 0;
  for (const auto& table : doc["tables"]) {
    if (table["basis"] != "daily") continue;
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& row : table["rows"]) {
      pairs.insert({row["season"].get<std::string>(), row["level"].get<std::string>()});
      for (const auto& [metric, values] : row["demand_weighted"].items()) metric_cells += values.size();
    }
    if (pairs.size() != 9) errors.push_back("table " + table["scenario"].get<std::string>() + " misses season/level rows");
  }
  if (doc["alphas"] != nlohmann::json::array({0.0, 0.25, 0.5, 1.0})) errors.push_back("alpha columns differ");
  std::set<std::string> pct_levels;
  for (const auto& p : doc["percentiles"]) pct_levels.insert(p["level"].get<std::string>());
  if (pct_levels.size() != 3) errors.push_back("percentile rows miss a pooling level");
  std::string first;
  if (!errors.empty()) first = "; first issue: " + errors.front();
  const std::size_t scenarios = doc["scenarios"].size();
  return {errors.empty(), std::to_string(metric_cells / std::max<std::size_t>(scenarios, 1)) +
                              " daily metric cells per scenario (4 x 4 x 3 x 3 = 144), " +
                              std::to_string(doc["percentiles"].size()) + " percentile rows, " +
                              std::to_string(errors.size()) + " schema issues" + first};
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&](int id, const char* name, const std::function<Outcome()>& check, double max_seconds = 0.0) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (max_seconds > 0.0 && secs >= max_seconds) {
      o.pass = false;
      o.detail += "; runtime limit " + fmt("%.0f s", max_seconds) + " exceeded";
    }
    failures += !o.pass;
    std::printf("criterion %2d %s: %s: %s [%.2f s]\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  report(1, "degree-hour unit suite", degree_hour_suite, 1.0);
  report(2, "flattening oracle equivalence", flattening_oracle, 30.0);
  report(3, "flattenability criterion", flattenability);
  report(4, "alpha monotonicity", alpha_monotonicity);
  report(5, "pooling dominance", pooling_dominance);

  std::optional<SyntheticData> noisy, exact;
  std::vector<RegionFit> noisy_fits, exact_fits;
  report(6, "regression recovery", [&] {
    noisy = generate_synthetic(recovery_spec(0.02));
    exact = generate_synthetic(recovery_spec(0.0));
    noisy_fits = fit_synthetic(*noisy, std::nullopt);
    exact_fits = fit_synthetic(*exact, std::nullopt);
    return regression_recovery(*noisy, noisy_fits, exact_fits);
  }, 120.0);
  report(7, "shiftable-share oracle", [&] {
    if (!exact) return Outcome{false, "no noiseless fits"};
    return shiftable_share_oracle(*exact, exact_fits);
  });
  report(8, "numerical hygiene", [&] { return numerical_hygiene(noisy_fits); });

  CliRuns runs;
  report(9, "end-to-end determinism", [&] {
    runs = cli_runs();
    return determinism(runs);
  });
  report(10, "report-shape fidelity", [&] { return report_shape(runs); });
  if (!runs.root.empty()) std::filesystem::remove_all(runs.root);

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
