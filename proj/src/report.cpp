#include "gridflex/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include <json.hpp>

#include "gridflex/csv.hpp"
#include "gridflex/error.hpp"

namespace gridflex {
namespace {

bool same_alpha(double a, double b) { return std::abs(a - b) < 1e-12; }

std::vector<double> merged_alphas(const ReportOptions& options) {
  std::vector<double> all = options.alphas;
  for (double a : options.percentile_alphas) {
    if (std::none_of(all.begin(), all.end(), [&](double b) { return same_alpha(a, b); })) all.push_back(a);
  }
  return all;
}

bool wants(std::span<const double> alphas, double alpha) {
  return std::any_of(alphas.begin(), alphas.end(), [&](double a) { return same_alpha(a, alpha); });
}

std::string level_label(PoolLevel level) {
  switch (level) {
    case PoolLevel::Region: return "Regional";
    case PoolLevel::Interconnect: return "Interconnect";
    case PoolLevel::Nation: return "Nationwide";
  }
  return "";
}

std::string fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

std::string to_string(Basis basis) { return basis == Basis::Daily ? "daily" : "overall"; }

const TableCell& FlattenReport::cell(const std::string& scenario, Basis basis, PoolLevel level, Season season,
                                     double alpha) const {
  for (const auto& c : cells) {
    if (c.scenario == scenario && c.basis == basis && c.level == level && c.season == season &&
        same_alpha(c.alpha, alpha)) {
      return c;
    }
  }
  throw InputError("report has no cell for " + scenario + "/" + to_string(basis) + "/" + to_string(level) + "/" +
                   to_string(season) + "/alpha=" + csv::format_double(alpha));
}

FlattenReport build_report(std::span<const ScenarioInput> scenarios, const ReportOptions& options) {
  if (scenarios.empty() || scenarios.front().regions.empty()) throw InputError("report needs at least one region");
  FlattenReport report;
  report.options = options;
  const auto alphas = merged_alphas(options);

  // Historic observed days per (level, pool index), used to normalize the
  // percentile rows of every scenario.
  std::map<std::pair<PoolLevel, std::size_t>, std::vector<FlattenedDay>> historic_days;

  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const ScenarioInput& scenario = scenarios[si];
    report.scenarios.push_back(scenario.name);
    for (const PoolLevel level : options.levels) {
      const auto pools = pool_by_level(scenario.regions, level, options.reference_offset_hours);
      for (const double alpha : alphas) {
        std::vector<std::vector<FlattenedDay>> pool_days;
        for (const auto& pool : pools) {
          auto flat = flatten_series(with_alpha(pool, alpha));
          if (si == 0 && level == options.levels.front() && same_alpha(alpha, alphas.front())) {
            report.skipped_days += flat.skipped_days;
          }
          pool_days.push_back(std::move(flat.days));
        }
        if (si == 0) {
          for (std::size_t p = 0; p < pools.size(); ++p) historic_days.try_emplace({level, p}, pool_days[p]);
        }
        if (wants(options.alphas, alpha)) {
          for (const Season season : options.seasons) {
            std::vector<DailySummary> daily;
            std::vector<OverallSummary> overall;
            std::size_t days = 0;
            for (const auto& pd : pool_days) {
              const auto slice = seasonal_slice(pd, season);
              if (slice.empty()) continue;
              daily.push_back(daily_stats(slice));
              overall.push_back(overall_stats(slice));
              days += slice.size();
            }
            if (daily.empty()) continue;
            TableCell d{scenario.name, Basis::Daily, level, season, alpha, daily.size(), days, combine(daily)};
            TableCell o{scenario.name, Basis::Overall, level, season, alpha, overall.size(), days, combine(overall)};
            report.cells.push_back(d);
            report.cells.push_back(o);
          }
        }
        if (wants(options.percentile_alphas, alpha)) {
          PeakBaseAccumulator acc;
          for (std::size_t p = 0; p < pool_days.size(); ++p) acc.add(pool_days[p], historic_days.at({level, p}));
          if (acc.size() > 0) report.percentiles.push_back({scenario.name, level, alpha, acc.summarize()});
        }
      }
    }
  }

  const auto& base_regions = scenarios.front().regions;
  report.temperature_sensitive_share = demand_weighted_share(base_regions);

  if (options.include_alpha_sweep && !options.sweep_alphas.empty()) {
    std::vector<double> weights;
    std::vector<std::vector<AlphaCurvePoint>> curves;
    for (const auto& region : base_regions) {
      curves.push_back(alpha_sweep(region, options.sweep_alphas));
      double total = 0.0;
      for (double v : region.observed_mw) total += v;
      weights.push_back(region.observed_mw.empty() ? 0.0 : total / static_cast<double>(region.observed_mw.size()));
      for (const auto& pt : curves.back()) {
        report.sweep.push_back({region.region_id, pt.alpha, pt.daily_sd_reduction_pct, pt.overall_sd_reduction_pct});
      }
    }
    double weight_sum = 0.0;
    for (double w : weights) weight_sum += w;
    for (std::size_t a = 0; a < options.sweep_alphas.size(); ++a) {
      SweepRow row{"demand_weighted", options.sweep_alphas[a], 0.0, 0.0};
      for (std::size_t r = 0; r < curves.size(); ++r) {
        const double w = weight_sum > 0.0 ? weights[r] / weight_sum : 1.0 / static_cast<double>(curves.size());
        row.daily_sd_reduction_pct += w * curves[r][a].daily_sd_reduction_pct;
        row.overall_sd_reduction_pct += w * curves[r][a].overall_sd_reduction_pct;
      }
      report.sweep.push_back(row);
    }
  }
  return report;
}

namespace {

nlohmann::ordered_json averages_json(const FlattenReport& report, const std::string& scenario, Basis basis,
                                     PoolLevel level, Season season, bool weighted) {
  nlohmann::ordered_json j;
  std::vector<double> peak, base, sd, flat;
  for (const double alpha : report.options.alphas) {
    const auto& c = report.cell(scenario, basis, level, season, alpha);
    const RegionalAverage& avg = weighted ? c.summary.demand_weighted : c.summary.unweighted;
    peak.push_back(avg.peak_reduction_pct);
    base.push_back(avg.base_increase_pct);
    sd.push_back(avg.sd_reduction_pct);
    flat.push_back(avg.flattenable_share_pct);
  }
  j["peak_reduction"] = peak;
  j["base_increase"] = base;
  j["sd_reduction"] = sd;
  if (basis == Basis::Daily) j["flattenable_share"] = flat;
  return j;
}

bool has_cell(const FlattenReport& report, const std::string& scenario, Basis basis, PoolLevel level, Season season) {
  return std::any_of(report.cells.begin(), report.cells.end(), [&](const TableCell& c) {
    return c.scenario == scenario && c.basis == basis && c.level == level && c.season == season;
  });
}

nlohmann::ordered_json family_json(const PercentileFamily& daily, const PercentileFamily& overall) {
  nlohmann::ordered_json j;
  j["p1"] = {{"daily", daily.p1}, {"overall", overall.p1}};
  j["mean"] = {{"daily", daily.mean}, {"overall", overall.mean}};
  j["p99"] = {{"daily", daily.p99}, {"overall", overall.p99}};
  return j;
}

}  // namespace

void write_report_json(const FlattenReport& report, std::ostream& out) {
  nlohmann::ordered_json root;
  root["schema"] = "gridflex.report/1";
  root["alphas"] = report.options.alphas;
  root["scenarios"] = report.scenarios;
  root["temperature_sensitive_share"] = report.temperature_sensitive_share;
  root["skipped_days"] = report.skipped_days;
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();
  for (const auto& scenario : report.scenarios) {
    for (const Basis basis : {Basis::Daily, Basis::Overall}) {
      nlohmann::ordered_json table;
      table["scenario"] = scenario;
      table["basis"] = to_string(basis);
      table["metrics"] = basis == Basis::Daily
                             ? std::vector<std::string>{"peak_reduction", "base_increase", "sd_reduction",
                                                        "flattenable_share"}
                             : std::vector<std::string>{"peak_reduction", "base_increase", "sd_reduction"};
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const Season season : report.options.seasons) {
        for (const PoolLevel level : report.options.levels) {
          if (!has_cell(report, scenario, basis, level, season)) continue;
          nlohmann::ordered_json row;
          row["season"] = to_string(season);
          row["level"] = to_string(level);
          row["demand_weighted"] = averages_json(report, scenario, basis, level, season, true);
          row["unweighted"] = averages_json(report, scenario, basis, level, season, false);
          rows.push_back(row);
        }
      }
      table["rows"] = rows;
      tables.push_back(table);
    }
  }
  root["tables"] = tables;
  nlohmann::ordered_json pct = nlohmann::ordered_json::array();
  for (const auto& p : report.percentiles) {
    nlohmann::ordered_json row;
    row["scenario"] = p.scenario;
    row["level"] = to_string(p.level);
    row["alpha"] = p.alpha;
    row["base"] = family_json(p.table.base_daily, p.table.base_overall);
    row["peak"] = family_json(p.table.peak_daily, p.table.peak_overall);
    pct.push_back(row);
  }
  root["percentiles"] = pct;
  nlohmann::ordered_json sweep = nlohmann::ordered_json::array();
  for (const auto& s : report.sweep) {
    sweep.push_back({{"series", s.series},
                     {"alpha", s.alpha},
                     {"daily_sd_reduction", s.daily_sd_reduction_pct},
                     {"overall_sd_reduction", s.overall_sd_reduction_pct}});
  }
  root["alpha_sweep"] = sweep;
  out << root.dump(2) << '\n';
}

void write_report_csv(const FlattenReport& report, std::ostream& out) {
  out << "scenario,basis,level,season,alpha,weighting,metric,value\n";
  for (const auto& c : report.cells) {
    for (const bool weighted : {true, false}) {
      const RegionalAverage& a = weighted ? c.summary.demand_weighted : c.summary.unweighted;
      const std::string prefix = c.scenario + "," + to_string(c.basis) + "," + to_string(c.level) + "," +
                                 to_string(c.season) + "," + csv::format_double(c.alpha) + "," +
                                 (weighted ? "demand_weighted" : "unweighted") + ",";
      out << prefix << "peak_reduction," << csv::format_double(a.peak_reduction_pct) << '\n';
      out << prefix << "base_increase," << csv::format_double(a.base_increase_pct) << '\n';
      out << prefix << "sd_reduction," << csv::format_double(a.sd_reduction_pct) << '\n';
      if (c.basis == Basis::Daily) {
        out << prefix << "flattenable_share," << csv::format_double(a.flattenable_share_pct) << '\n';
      }
    }
  }
}

void write_percentiles_csv(const FlattenReport& report, std::ostream& out) {
  out << "scenario,level,alpha,family,stat,normalization,value\n";
  for (const auto& p : report.percentiles) {
    const auto emit = [&](const char* family, const PercentileFamily& daily, const PercentileFamily& overall) {
      const std::string prefix = p.scenario + "," + to_string(p.level) + "," + csv::format_double(p.alpha) + "," + family;
      out << prefix << ",p1,daily," << csv::format_double(daily.p1) << '\n';
      out << prefix << ",p1,overall," << csv::format_double(overall.p1) << '\n';
      out << prefix << ",mean,daily," << csv::format_double(daily.mean) << '\n';
      out << prefix << ",mean,overall," << csv::format_double(overall.mean) << '\n';
      out << prefix << ",p99,daily," << csv::format_double(daily.p99) << '\n';
      out << prefix << ",p99,overall," << csv::format_double(overall.p99) << '\n';
    };
    emit("base", p.table.base_daily, p.table.base_overall);
    emit("peak", p.table.peak_daily, p.table.peak_overall);
  }
}

void write_sweep_csv(const FlattenReport& report, std::ostream& out) {
  out << "series,alpha,daily_sd_reduction,overall_sd_reduction\n";
  for (const auto& s : report.sweep) {
    out << s.series << ',' << csv::format_double(s.alpha) << ',' << csv::format_double(s.daily_sd_reduction_pct)
        << ',' << csv::format_double(s.overall_sd_reduction_pct) << '\n';
  }
}

void write_table_text(const FlattenReport& report, const std::string& scenario, Basis basis, std::ostream& out) {
  std::vector<std::string> metrics{"Peak Load Reduction", "Base Load Increase", "SD Reduction"};
  if (basis == Basis::Daily) metrics.push_back("Share of Flattenable Days");
  std::string alpha_header;
  for (const double a : report.options.alphas) {
    alpha_header += (alpha_header.empty() ? "" : " | ") + csv::format_double(a);
  }
  out << "# " << scenario << " / " << to_string(basis) << " basis (demand-weighted across pools)\n";
  out << "Level";
  for (const auto& m : metrics) out << '\t' << m;
  out << "\nalpha";
  for (std::size_t i = 0; i < metrics.size(); ++i) out << '\t' << alpha_header;
  out << '\n';
  for (const Season season : report.options.seasons) {
    out << "-" << to_string(season) << "-\n";
    for (const PoolLevel level : report.options.levels) {
      if (!has_cell(report, scenario, basis, level, season)) continue;
      std::vector<std::string> cols(metrics.size());
      for (const double a : report.options.alphas) {
        const auto& avg = report.cell(scenario, basis, level, season, a).summary.demand_weighted;
        const double values[4] = {avg.peak_reduction_pct, avg.base_increase_pct, avg.sd_reduction_pct,
                                  avg.flattenable_share_pct};
        for (std::size_t m = 0; m < metrics.size(); ++m) {
          cols[m] += (cols[m].empty() ? "" : " | ") + fixed1(values[m]);
        }
      }
      out << level_label(level);
      for (const auto& c : cols) out << '\t' << c;
      out << '\n';
    }
  }
}

}  // namespace gridflex
