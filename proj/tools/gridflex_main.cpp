// gridflex command-line interface.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gridflex/csv.hpp"
#include "gridflex/error.hpp"
#include "gridflex/io.hpp"
#include "gridflex/kernels.hpp"
#include "gridflex/pipeline.hpp"
#include "gridflex/validate.hpp"

namespace fs = std::filesystem;
using namespace gridflex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitOther = 1;

ModelSpec parse_spec(const std::string& text) {
  ModelSpec s;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> s.knots_hod >> comma >> s.knots_hoy) || comma != ',' || !in.eof()) {
    throw InputError("--spec expects K,L (e.g. 19,6), got '" + text + "'");
  }
  s.validate();
  return s;
}

std::vector<Season> parse_seasons(const std::vector<std::string>& names) {
  std::vector<Season> out;
  for (const auto& n : names) out.push_back(parse_season(n));
  return out;
}

template <typename F>
void write_to(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  auto out = io::open_output(path);
  write(out);
}

const RegionalWeather& weather_for(const std::vector<RegionalWeather>& weather, const std::string& id) {
  for (const auto& w : weather) {
    if (w.region_id == id) return w;
  }
  throw InputError("no weather for region " + id);
}

const LoadSeries& load_for(const std::vector<LoadSeries>& load, const std::string& id) {
  for (const auto& l : load) {
    if (l.region_id == id) return l;
  }
  throw InputError("no load for region " + id);
}

struct SpecGridFlags {
  std::vector<int> knots_hod{6, 10, 14, 19, 24};
  std::vector<int> knots_hoy{4, 6, 9, 12};

  void add(CLI::App* app) {
    app->add_option("--knots-hod", knots_hod, "Hour-of-day knot counts searched by cross-validation")
        ->delimiter(',')
        ->capture_default_str();
    app->add_option("--knots-hoy", knots_hoy, "Hour-of-year knot counts searched by cross-validation")
        ->delimiter(',')
        ->capture_default_str();
  }
  SpecGrid grid(bool interactions) const {
    SpecGrid g;
    g.knots_hod = knots_hod;
    g.knots_hoy = knots_hoy;
    g.include_climate_interactions = interactions;
    return g;
  }
};

void add_synthetic_flags(CLI::App* app, SyntheticSpec& s, std::string& spec_text) {
  app->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  app->add_option("--synthetic-regions", s.regions, "Number of regions")->capture_default_str();
  app->add_option("--synthetic-cells", s.cells_per_region, "Grid cells per region")->capture_default_str();
  app->add_option("--start-year", s.start_year, "First calendar year")->capture_default_str();
  app->add_option("--years", s.years, "Number of calendar years")->capture_default_str();
  app->add_option("--sigma", s.sigma, "Log-demand noise SD")->capture_default_str();
  app->add_option("--alpha-h", s.alpha_h, "True HDH coefficient")->capture_default_str();
  app->add_option("--alpha-c", s.alpha_c, "True CDH coefficient")->capture_default_str();
  app->add_option("--gamma-h", s.gamma_h, "True HDH interaction coefficient")->capture_default_str();
  app->add_option("--gamma-c", s.gamma_c, "True CDH interaction coefficient")->capture_default_str();
  app->add_option("--synthetic-spec", spec_text, "Generating model knots K,L")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridflex: temperature-sensitive load estimation and within-day flattening"};
  app.set_config("--config", "", "Key-value config file; command-line flags override it");
  app.require_subcommand(1);
  bool print_kernels = false;
  app.add_flag("--print-kernels", print_kernels, "Report the active SIMD kernel table on stderr");

  // validate
  auto* validate = app.add_subcommand("validate", "Check input files and report every issue");
  std::string v_grid, v_regions, v_load, v_normals, v_out;
  validate->add_option("--grid", v_grid, "Gridded temperature CSV");
  validate->add_option("--regions", v_regions, "Region definition CSV");
  validate->add_option("--load", v_load, "Hourly load CSV");
  validate->add_option("--normals", v_normals, "Per-cell mean degree hours CSV");
  validate->add_option("--out", v_out, "Report path (JSON; default stdout)");

  // weather
  auto* weather = app.add_subcommand("weather", "Interpolate the grid and aggregate regional degree hours");
  std::string w_grid, w_regions, w_normals, w_out, w_cache, w_from, w_to, w_normals_out;
  double w_threshold = kDefaultThresholdC;
  bool w_inter = false;
  weather->add_option("--grid", w_grid, "Gridded temperature CSV or .gfxgrid cache")->required();
  weather->add_option("--regions", w_regions, "Region definition CSV")->required();
  weather->add_option("--normals", w_normals, "Per-cell mean degree hours (default: in-sample)");
  weather->add_flag("--interactions", w_inter, "Also aggregate climate interaction terms");
  weather->add_option("--threshold", w_threshold, "Degree-hour threshold in °C")->capture_default_str();
  weather->add_option("--from", w_from, "First hour (RFC 3339; default first grid sample)");
  weather->add_option("--to", w_to, "Last hour (RFC 3339; default last grid sample)");
  weather->add_option("--out", w_out, "Regional weather CSV")->required();
  weather->add_option("--cache", w_cache, "Also write the hourly grid as a binary cache");
  weather->add_option("--normals-out", w_normals_out, "Write the normals used");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit per-region log-demand models");
  std::string f_load, f_weather, f_regions, f_spec = "19,6", f_out, f_cv_out;
  bool f_inter = false, f_cv = false, f_no_nw = false, f_no_min_norm = false, f_no_weather = false;
  int f_lag = 24;
  SpecGridFlags f_grid;
  fit->add_option("--load", f_load, "Hourly load CSV")->required();
  fit->add_option("--weather", f_weather, "Regional weather CSV")->required();
  fit->add_option("--regions", f_regions, "Region definition CSV (day boundary offsets)")->required();
  fit->add_option("--spec", f_spec, "Knot counts K,L")->capture_default_str();
  fit->add_flag("--interactions", f_inter, "Include climate interaction terms");
  fit->add_flag("--no-weather", f_no_weather, "Calendar-only baseline model");
  fit->add_flag("--cv", f_cv, "Choose K,L per region by year-out cross-validation");
  f_grid.add(fit);
  fit->add_option("--nw-lag", f_lag, "Newey-West maximum lag in hours")->capture_default_str();
  fit->add_flag("--no-nw", f_no_nw, "Skip Newey-West standard errors");
  fit->add_flag("--no-min-norm", f_no_min_norm, "Fail on rank-deficient designs instead of using minimum norm");
  fit->add_option("--out", f_out, "Model JSON")->required();
  fit->add_option("--cv-out", f_cv_out, "Cross-validation table CSV (with --cv)");

  // cv
  auto* cv = app.add_subcommand("cv", "Cross-validate knot counts");
  std::string c_load, c_weather, c_regions, c_out;
  bool c_inter = false, c_no_min_norm = false;
  SpecGridFlags c_grid;
  cv->add_option("--load", c_load, "Hourly load CSV")->required();
  cv->add_option("--weather", c_weather, "Regional weather CSV")->required();
  cv->add_option("--regions", c_regions, "Region definition CSV")->required();
  cv->add_flag("--interactions", c_inter, "Include climate interaction terms");
  cv->add_flag("--no-min-norm", c_no_min_norm, "Fail on rank-deficient designs");
  c_grid.add(cv);
  cv->add_option("--out", c_out, "Cross-validation table CSV (default stdout)");

  // shiftable
  auto* shift = app.add_subcommand("shiftable", "Split observed load into hard and flexible parts");
  std::string s_model, s_load, s_weather, s_regions, s_grid, s_normals, s_out, s_load_out;
  double s_alpha = 1.0, s_threshold = kDefaultThresholdC;
  std::optional<double> s_delta;
  shift->add_option("--model", s_model, "Model JSON")->required();
  shift->add_option("--load", s_load, "Hourly load CSV")->required();
  shift->add_option("--weather", s_weather, "Regional weather CSV")->required();
  shift->add_option("--regions", s_regions, "Region definition CSV")->required();
  shift->add_option("--alpha", s_alpha, "Shiftable fraction of temperature-sensitive load")->capture_default_str();
  shift->add_option("--delta-t", s_delta, "Uniform warming in °C (needs --grid)");
  shift->add_option("--grid", s_grid, "Gridded temperature CSV or hourly .gfxgrid cache");
  shift->add_option("--normals", s_normals, "Per-cell normals for interaction models");
  shift->add_option("--threshold", s_threshold, "Degree-hour threshold in °C")->capture_default_str();
  shift->add_option("--out", s_out, "Shiftable CSV")->required();
  shift->add_option("--load-out", s_load_out, "Warmed load CSV (with --delta-t)");

  // flatten
  auto* flatten = app.add_subcommand("flatten", "Flatten each day by shifting flexible load");
  std::string fl_in, fl_pool = "region", fl_out, fl_summary;
  double fl_alpha = 0.5;
  int fl_offset = kDefaultPoolOffsetHours;
  flatten->add_option("--shiftable", fl_in, "Shiftable CSV")->required();
  flatten->add_option("--pool", fl_pool, "Pooling level")
      ->check(CLI::IsMember({"region", "interconnect", "nation"}))
      ->capture_default_str();
  flatten->add_option("--alpha", fl_alpha, "Shiftable fraction")->capture_default_str();
  flatten->add_option("--pool-offset", fl_offset, "Day boundary of pooled series (hours from UTC)")
      ->capture_default_str();
  flatten->add_option("--out", fl_out, "Flattened CSV")->required();
  flatten->add_option("--summary", fl_summary, "Per-pool daily and overall statistics CSV");

  // report
  auto* report = app.add_subcommand("report", "Build the flattening statistics tables");
  std::vector<std::string> r_inputs, r_names, r_seasons{"all", "winter", "summer"};
  std::vector<double> r_alphas{0.0, 0.25, 0.5, 1.0}, r_palphas{0.0, 0.5, 1.0};
  std::string r_out_dir = "report";
  int r_offset = kDefaultPoolOffsetHours;
  bool r_no_sweep = false;
  report->add_option("--inputs", r_inputs, "Shiftable CSVs; the first is the historic baseline")
      ->required()
      ->delimiter(',');
  report->add_option("--scenario-names", r_names, "Names for the inputs (default present, scenario2, ...)")
      ->delimiter(',');
  report->add_option("--seasons", r_seasons, "Season slices")->delimiter(',')->capture_default_str();
  report->add_option("--alphas", r_alphas, "Alpha columns")->delimiter(',')->capture_default_str();
  report->add_option("--percentile-alphas", r_palphas, "Alphas of the percentile table")
      ->delimiter(',')
      ->capture_default_str();
  report->add_option("--pool-offset", r_offset, "Day boundary of pooled series")->capture_default_str();
  report->add_flag("--no-sweep", r_no_sweep, "Skip the alpha sweep curves");
  report->add_option("--out-dir", r_out_dir, "Output directory")->capture_default_str();

  // synthetic
  auto* synthetic = app.add_subcommand("synthetic", "Generate fixtures with known truth");
  SyntheticSpec syn;
  std::string syn_spec = "19,6", syn_out = "synthetic";
  bool syn_inter = false;
  add_synthetic_flags(synthetic, syn, syn_spec);
  synthetic->add_flag("--interactions", syn_inter, "Generate with climate interaction terms");
  synthetic->add_option("--out-dir", syn_out, "Output directory")->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "Run the whole pipeline");
  PipelineConfig cfg;
  std::string run_grid, run_regions, run_load, run_normals, run_out = "gridflex_out", run_spec = "19,6",
                                                             run_pool = "region", run_syn_spec = "19,6";
  bool run_no_cv = false, run_no_nw = false, run_no_min_norm = false, run_synthetic = false;
  int run_lag = 24;
  std::vector<std::string> run_seasons{"all", "winter", "summer"};
  std::optional<double> run_delta;
  SpecGridFlags run_grid_flags;
  SyntheticSpec run_syn;
  run->add_option("--grid", run_grid, "Gridded temperature CSV or .gfxgrid cache");
  run->add_option("--regions", run_regions, "Region definition CSV");
  run->add_option("--load", run_load, "Hourly load CSV");
  run->add_option("--normals", run_normals, "Per-cell normals (default in-sample)");
  run->add_option("--out-dir", run_out, "Output directory")->capture_default_str();
  run->add_option("--threshold", cfg.threshold_c, "Degree-hour threshold in °C")->capture_default_str();
  run->add_flag("--no-cv", run_no_cv, "Use --spec for every region instead of cross-validation");
  run->add_option("--spec", run_spec, "Knot counts K,L with --no-cv")->capture_default_str();
  run_grid_flags.add(run);
  run->add_flag("--interactions", cfg.include_climate_interactions, "Include climate interaction terms");
  run->add_option("--nw-lag", run_lag, "Newey-West maximum lag")->capture_default_str();
  run->add_flag("--no-nw", run_no_nw, "Skip Newey-West standard errors");
  run->add_flag("--no-min-norm", run_no_min_norm, "Fail on rank-deficient designs");
  run->add_option("--alphas", cfg.alphas, "Alpha columns")->delimiter(',')->capture_default_str();
  run->add_option("--percentile-alphas", cfg.percentile_alphas, "Alphas of the percentile table")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--seasons", run_seasons, "Season slices")->delimiter(',')->capture_default_str();
  run->add_option("--pool", run_pool, "Pooling level of the flattened files")
      ->check(CLI::IsMember({"region", "interconnect", "nation"}))
      ->capture_default_str();
  run->add_option("--pool-offset", cfg.pool_offset_hours, "Day boundary of pooled series")->capture_default_str();
  run->add_option("--delta-t", run_delta, "Add a uniform warming scenario (°C)");
  run->add_flag("--no-sweep", [&](std::int64_t) { cfg.alpha_sweep = false; }, "Skip the alpha sweep curves");
  run->add_option("--profile-bin", cfg.profile_bin_c, "Temperature bin width of demand profiles")
      ->capture_default_str();
  run->add_flag("--synthetic", run_synthetic, "Generate fixtures first and run on them");
  add_synthetic_flags(run, run_syn, run_syn_spec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (print_kernels) std::cerr << "kernels: " << kernels::active().name << '\n';

  try {
    if (*validate) {
      ValidationInputs in;
      if (!v_grid.empty()) in.grid = v_grid;
      if (!v_regions.empty()) in.regions = v_regions;
      if (!v_load.empty()) in.load = v_load;
      if (!v_normals.empty()) in.normals = v_normals;
      const auto rep = validate_inputs(in);
      write_to(v_out, [&](std::ostream& o) { write_validation_json(rep, o); });
      for (const auto& i : rep.issues) std::cerr << i.file << ':' << i.line << ": " << i.rule << ": " << i.message << '\n';
      return rep.ok() ? kExitOk : kExitInput;
    }

    if (*weather) {
      const auto grid = read_any_grid(w_grid);
      const auto regions = io::read_regions(w_regions);
      std::optional<HourStamp> from, to;
      if (!w_from.empty()) from = parse_rfc3339(w_from);
      if (!w_to.empty()) to = parse_rfc3339(w_to);
      const auto hourly = interpolate_to_hourly(grid, from, to);
      const NormalsTable normals = w_normals.empty() ? in_sample_normals(hourly, w_threshold) : io::read_normals(w_normals);
      std::vector<RegionalWeather> out;
      for (const auto& r : regions) {
        out.push_back(w_inter ? climate_interaction_aggregates(hourly, r, normals, w_threshold)
                              : aggregate_region(hourly, r, w_threshold));
      }
      write_to(w_out, [&](std::ostream& o) { io::write_weather(out, o); });
      if (!w_cache.empty()) io::write_grid_cache(hourly, w_cache);
      if (!w_normals_out.empty()) write_to(w_normals_out, [&](std::ostream& o) { io::write_normals(normals, o); });
      return kExitOk;
    }

    if (*fit || *cv) {
      const bool is_cv = cv->parsed();
      const auto load = io::read_load(is_cv ? c_load : f_load);
      const auto wx = io::read_weather(is_cv ? c_weather : f_weather);
      const auto regions = io::read_regions(is_cv ? c_regions : f_regions);
      OlsOptions ols;
      ols.allow_min_norm = !(is_cv ? c_no_min_norm : f_no_min_norm);
      std::vector<CvTable> tables;
      std::vector<FittedDemandModel> models;
      for (const auto& l : load) {
        const RegionSpec& r = io::find_region(regions, l.region_id);
        const RegionalWeather& w = weather_for(wx, l.region_id);
        if (is_cv || f_cv) {
          const auto& flags = is_cv ? c_grid : f_grid;
          tables.push_back(cross_validate(l, w, r.day_boundary_offset_hours, flags.grid(is_cv ? c_inter : f_inter), ols));
          std::cerr << l.region_id << ": best " << describe(tables.back().best) << " mean R2 "
                    << tables.back().best_r2 << '\n';
        }
        if (is_cv) continue;
        ModelSpec spec = f_cv ? tables.back().best : parse_spec(f_spec);
        spec.include_climate_interactions = f_inter;
        FitOptions fo;
        fo.ols = ols;
        if (f_no_nw) fo.nw_max_lag.reset();
        else fo.nw_max_lag = f_lag;
        FittedDemandModel m;
        if (f_no_weather) {
          spec.include_weather = false;
          spec.include_climate_interactions = false;
          m = baseline_fit(l, spec, r.day_boundary_offset_hours, fo);
        } else {
          m = fit_model(l, w, spec, r.day_boundary_offset_hours, fo);
        }
        if (f_cv) m.cv_r2 = tables.back().best_r2;
        std::cerr << m.region_id << ": " << describe(m.spec) << " R2 " << m.in_sample_r2 << '\n';
        models.push_back(std::move(m));
      }
      if (is_cv) {
        write_to(c_out, [&](std::ostream& o) { io::write_cv(tables, o); });
      } else {
        io::write_models(models, f_out);
        if (!f_cv_out.empty()) write_to(f_cv_out, [&](std::ostream& o) { io::write_cv(tables, o); });
      }
      return kExitOk;
    }

    if (*shift) {
      const auto models = io::read_models(s_model);
      const auto load = io::read_load(s_load);
      const auto wx = io::read_weather(s_weather);
      const auto regions = io::read_regions(s_regions);
      std::vector<ShiftableSeries> out;
      std::vector<LoadSeries> warmed;
      std::optional<TemperatureGrid> hourly;
      std::optional<NormalsTable> normals;
      if (s_delta) {
        if (s_grid.empty()) throw InputError("--delta-t needs --grid");
        const auto grid = read_any_grid(s_grid);
        HourStamp first = models.front().timestamps.front(), last = models.front().timestamps.back();
        for (const auto& m : models) {
          first = std::min(first, m.timestamps.front());
          last = std::max(last, m.timestamps.back());
        }
        hourly = interpolate_to_hourly(grid, first, last);
        normals = s_normals.empty() ? in_sample_normals(*hourly, s_threshold) : io::read_normals(s_normals);
      }
      for (const auto& m : models) {
        const RegionSpec& r = io::find_region(regions, m.region_id);
        if (s_delta) {
          auto res = climate_shift(m, *hourly, r, &*normals, ClimateScenario{*s_delta}, s_alpha, s_threshold);
          warmed.push_back(std::move(res.shifted_load));
          out.push_back(std::move(res.shiftable));
        } else {
          out.push_back(build_shiftable({&m, &load_for(load, m.region_id), &weather_for(wx, m.region_id), r.interconnect},
                                        s_alpha));
        }
      }
      write_to(s_out, [&](std::ostream& o) { io::write_shiftable(out, o); });
      if (!s_load_out.empty()) write_to(s_load_out, [&](std::ostream& o) { io::write_load(warmed, o); });
      std::cerr << "demand-weighted flexible share: " << demand_weighted_share(out) << '\n';
      return kExitOk;
    }

    if (*flatten) {
      const auto series = io::read_shiftable(fs::path(fl_in));
      const PoolLevel level = parse_pool_level(fl_pool);
      std::vector<FlattenedDay> days;
      std::ostringstream summary;
      summary << "pool_id,days,skipped_days,daily_peak_reduction,daily_base_increase,daily_sd_reduction,"
                 "flattenable_share,overall_peak_reduction,overall_base_increase,overall_sd_reduction\n";
      for (const auto& pool : pool_by_level(series, level, fl_offset)) {
        auto f = flatten_series(with_alpha(pool, fl_alpha));
        if (!f.days.empty()) {
          const auto d = daily_stats(f.days);
          const auto o = overall_stats(f.days);
          summary << pool.region_id << ',' << d.days << ',' << f.skipped_days << ','
                  << csv::format_double(d.peak_reduction_pct) << ',' << csv::format_double(d.base_increase_pct) << ','
                  << csv::format_double(d.sd_reduction_pct) << ',' << csv::format_double(d.flattenable_share_pct)
                  << ',' << csv::format_double(o.peak_reduction_pct) << ',' << csv::format_double(o.base_increase_pct)
                  << ',' << csv::format_double(o.sd_reduction_pct) << '\n';
        }
        std::move(f.days.begin(), f.days.end(), std::back_inserter(days));
      }
      write_to(fl_out, [&](std::ostream& o) { io::write_flattened(days, o); });
      if (!fl_summary.empty()) write_to(fl_summary, [&](std::ostream& o) { o << summary.str(); });
      return kExitOk;
    }

    if (*report) {
      std::vector<ScenarioInput> scenarios;
      for (std::size_t i = 0; i < r_inputs.size(); ++i) {
        ScenarioInput s;
        s.name = i < r_names.size() ? r_names[i] : (i == 0 ? std::string(kPresentScenario) : "scenario" + std::to_string(i + 1));
        s.regions = io::read_shiftable(fs::path(r_inputs[i]));
        scenarios.push_back(std::move(s));
      }
      ReportOptions ro;
      ro.alphas = r_alphas;
      ro.percentile_alphas = r_palphas;
      ro.seasons = parse_seasons(r_seasons);
      ro.reference_offset_hours = r_offset;
      ro.include_alpha_sweep = !r_no_sweep;
      const auto rep = build_report(scenarios, ro);
      const fs::path dir = r_out_dir;
      write_to((dir / "report.json").string(), [&](std::ostream& o) { write_report_json(rep, o); });
      write_to((dir / "report.csv").string(), [&](std::ostream& o) { write_report_csv(rep, o); });
      write_to((dir / "percentiles.csv").string(), [&](std::ostream& o) { write_percentiles_csv(rep, o); });
      if (!r_no_sweep) write_to((dir / "alpha_sweep.csv").string(), [&](std::ostream& o) { write_sweep_csv(rep, o); });
      for (const auto& s : rep.scenarios) {
        write_table_text(rep, s, Basis::Daily, std::cout);
        std::cout << '\n';
      }
      return kExitOk;
    }

    if (*synthetic) {
      syn.model = parse_spec(syn_spec);
      syn.model.include_climate_interactions = syn_inter;
      write_synthetic(generate_synthetic(syn), syn_out);
      return kExitOk;
    }

    if (*run) {
      cfg.output_dir = run_out;
      cfg.cross_validate = !run_no_cv;
      cfg.spec = parse_spec(run_spec);
      cfg.spec_grid = run_grid_flags.grid(cfg.include_climate_interactions);
      cfg.nw_max_lag = run_no_nw ? std::nullopt : std::optional<int>(run_lag);
      cfg.allow_min_norm = !run_no_min_norm;
      cfg.seasons = parse_seasons(run_seasons);
      cfg.pool = parse_pool_level(run_pool);
      cfg.delta_t = run_delta;
      if (run_synthetic) {
        run_syn.model = parse_spec(run_syn_spec);
        run_syn.model.include_climate_interactions = cfg.include_climate_interactions;
        cfg.synthetic = run_syn;
      } else {
        if (run_grid.empty() || run_regions.empty() || run_load.empty()) {
          throw InputError("run needs --grid, --regions and --load (or --synthetic)");
        }
        cfg.grid = run_grid;
        cfg.regions = run_regions;
        cfg.load = run_load;
      }
      if (!run_normals.empty()) cfg.normals = fs::path(run_normals);
      const auto result = run_pipeline(cfg, &std::cerr);
      std::cerr << "wrote " << result.artifacts.size() << " artifacts and manifest.json to " << run_out << '\n';
      return kExitOk;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOk;
}
