#include "gridflex/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "gridflex/csv.hpp"
#include "gridflex/error.hpp"
#include "gridflex/io.hpp"
#include "gridflex/validate.hpp"

namespace gridflex {
namespace {

namespace fs = std::filesystem;

template <typename F>
auto stage(const char* name, std::ostream* log, F&& body) {
  if (log) *log << "[gridflex] " << name << '\n';
  try {
    return body();
  } catch (const InputError& e) {
    throw InputError(std::string(name) + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(name) + ": " + e.what());
  }
}

class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path root) : root_(std::move(root)) {}

  template <typename F>
  void text(const std::string& rel, F&& write) {
    {
      auto out = io::open_output(root_ / rel);
      write(out);
      if (!out) throw InputError("failed writing " + (root_ / rel).string());
    }
    record(rel);
  }

  void record(const std::string& rel) {
    const fs::path p = root_ / rel;
    entries_.push_back({rel, io::sha256_hex(p), fs::file_size(p)});
  }

  const fs::path& root() const { return root_; }
  std::vector<ManifestEntry> entries() const {
    auto e = entries_;
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
    return e;
  }

 private:
  fs::path root_;
  std::vector<ManifestEntry> entries_;
};

std::string alpha_tag(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", alpha);
  return buf;
}

void check_config(const PipelineConfig& c) {
  if (c.alphas.empty()) throw InputError("at least one alpha is required");
  for (double a : c.alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw InputError("alphas must lie in [0, 1]");
  }
  for (double a : c.percentile_alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw InputError("percentile alphas must lie in [0, 1]");
  }
  if (!(c.profile_bin_c > 0.0)) throw InputError("profile bin width must be > 0");
  if (c.pool_offset_hours < -23 || c.pool_offset_hours > 23) throw InputError("pool offset must lie in [-23, 23]");
  if (!c.cross_validate) c.spec.validate();
}

}  // namespace

std::string scenario_name(double delta_t) {
  return std::string(delta_t >= 0 ? "+" : "") + csv::format_double(delta_t) + "C";
}

TemperatureGrid read_any_grid(const fs::path& path) {
  if (path.extension() == ".gfxgrid") return io::read_grid_cache(path);
  return io::read_grid(path);
}

PipelineResult run_pipeline(const PipelineConfig& input_config, std::ostream* log) {
  PipelineConfig config = input_config;
  check_config(config);
  ArtifactWriter out(config.output_dir);
  fs::create_directories(config.output_dir);

  if (config.synthetic) {
    stage("synthetic", log, [&] {
      const fs::path dir = config.output_dir / "fixtures";
      write_synthetic(generate_synthetic(*config.synthetic), dir);
      for (const char* f : {"grid.csv", "regions.csv", "load.csv", "normals.csv", "truth_shares.csv",
                            "truth_models.json"}) {
        out.record(std::string("fixtures/") + f);
      }
      config.grid = dir / "grid.csv";
      config.regions = dir / "regions.csv";
      config.load = dir / "load.csv";
      if (config.include_climate_interactions && !config.normals) config.normals = dir / "normals.csv";
      return 0;
    });
  }

  stage("validate", log, [&] {
    ValidationInputs inputs;
    if (config.grid.extension() != ".gfxgrid") inputs.grid = config.grid;
    inputs.regions = config.regions;
    inputs.load = config.load;
    inputs.normals = config.normals;
    const ValidationReport report = validate_inputs(inputs);
    out.text("validation.json", [&](std::ostream& o) { write_validation_json(report, o); });
    if (!report.ok()) {
      const auto& first = report.issues.front();
      throw InputError(std::to_string(report.issues.size()) + " issue(s); first: " + first.file + ":" +
                       std::to_string(first.line) + ": " + first.rule + ": " + first.message);
    }
    return 0;
  });

  const auto regions = stage("read regions", log, [&] { return io::read_regions(config.regions); });
  const auto load = stage("read load", log, [&] { return io::read_load(config.load); });
  const TemperatureGrid grid = stage("read grid", log, [&] { return read_any_grid(config.grid); });

  // Hourly grid over the load horizon.
  HourStamp first = load.front().timestamps.front(), last = load.front().timestamps.back();
  for (const auto& l : load) {
    if (l.timestamps.empty()) continue;
    first = std::min(first, l.timestamps.front());
    last = std::max(last, l.timestamps.back());
  }
  const TemperatureGrid hourly =
      stage("weather interpolation", log, [&] { return interpolate_to_hourly(grid, first, last); });
  const bool inter = config.include_climate_interactions;
  const NormalsTable normals = stage("weather normals", log, [&] {
    NormalsTable n = config.normals ? io::read_normals(*config.normals) : in_sample_normals(hourly, config.threshold_c);
    return n;
  });
  std::vector<RegionalWeather> weather = stage("weather aggregation", log, [&] {
    std::vector<RegionalWeather> w;
    for (const auto& l : load) {
      const RegionSpec& r = io::find_region(regions, l.region_id);
      w.push_back(inter ? climate_interaction_aggregates(hourly, r, normals, config.threshold_c)
                        : aggregate_region(hourly, r, config.threshold_c));
    }
    out.text("weather.csv", [&](std::ostream& o) { io::write_weather(w, o); });
    if (!config.normals) out.text("normals.csv", [&](std::ostream& o) { io::write_normals(normals, o); });
    io::write_grid_cache(hourly, out.root() / "hourly_grid.gfxgrid");
    out.record("hourly_grid.gfxgrid");
    return w;
  });

  PipelineResult result;
  OlsOptions ols;
  ols.allow_min_norm = config.allow_min_norm;

  std::vector<ModelSpec> chosen;
  if (config.cross_validate) {
    stage("cv", log, [&] {
      SpecGrid g = config.spec_grid;
      g.include_climate_interactions = inter;
      for (std::size_t i = 0; i < load.size(); ++i) {
        const RegionSpec& r = io::find_region(regions, load[i].region_id);
        result.cv.push_back(cross_validate(load[i], weather[i], r.day_boundary_offset_hours, g, ols));
        chosen.push_back(result.cv.back().best);
        if (log) *log << "  " << load[i].region_id << ": " << describe(chosen.back()) << " R2=" << result.cv.back().best_r2 << '\n';
      }
      out.text("cv.csv", [&](std::ostream& o) { io::write_cv(result.cv, o); });
      return 0;
    });
  } else {
    ModelSpec s = config.spec;
    s.include_climate_interactions = inter;
    chosen.assign(load.size(), s);
  }

  stage("fit", log, [&] {
    FitOptions fo;
    fo.ols = ols;
    fo.nw_max_lag = config.nw_max_lag;
    for (std::size_t i = 0; i < load.size(); ++i) {
      const RegionSpec& r = io::find_region(regions, load[i].region_id);
      FittedDemandModel m = fit_model(load[i], weather[i], chosen[i], r.day_boundary_offset_hours, fo);
      if (config.cross_validate) m.cv_r2 = result.cv[i].best_r2;
      result.models.push_back(std::move(m));
    }
    io::write_models(result.models, out.root() / "models.json");
    out.record("models.json");
    out.text("fit_summary.csv", [&](std::ostream& o) {
      o << "region_id,knots_hod,knots_hoy,parameters,alpha_h,alpha_h_se,alpha_c,alpha_c_se,in_sample_r2,cv_r2,rank_"
           "deficient\n";
      for (const auto& m : result.models) {
        const std::size_t w = m.spec.tensor_count();
        const auto se = [&](std::size_t k) { return m.se.empty() ? std::string() : csv::format_double(m.se[k]); };
        o << m.region_id << ',' << m.spec.knots_hod << ',' << m.spec.knots_hoy << ',' << m.spec.parameter_count() << ','
          << csv::format_double(m.alpha_h()) << ',' << se(w) << ',' << csv::format_double(m.alpha_c()) << ','
          << se(w + 1) << ',' << csv::format_double(m.in_sample_r2) << ','
          << (m.cv_r2 ? csv::format_double(*m.cv_r2) : std::string()) << ',' << (m.rank_deficient ? 1 : 0) << '\n';
      }
    });
    return 0;
  });

  std::vector<ScenarioInput> scenarios(1);
  scenarios[0].name = kPresentScenario;
  stage("shiftable", log, [&] {
    for (std::size_t i = 0; i < load.size(); ++i) {
      const RegionSpec& r = io::find_region(regions, load[i].region_id);
      scenarios[0].regions.push_back(
          build_shiftable({&result.models[i], &load[i], &weather[i], r.interconnect}, 1.0));
    }
    out.text("shiftable.csv", [&](std::ostream& o) { io::write_shiftable(scenarios[0].regions, o); });
    if (config.delta_t) {
      ScenarioInput warm;
      warm.name = scenario_name(*config.delta_t);
      std::vector<LoadSeries> warm_load;
      for (std::size_t i = 0; i < load.size(); ++i) {
        const RegionSpec& r = io::find_region(regions, load[i].region_id);
        auto shifted = climate_shift(result.models[i], hourly, r, inter ? &normals : nullptr,
                                     ClimateScenario{*config.delta_t}, 1.0, config.threshold_c);
        warm_load.push_back(std::move(shifted.shifted_load));
        warm.regions.push_back(std::move(shifted.shiftable));
      }
      out.text("climate/" + warm.name + "/load.csv", [&](std::ostream& o) { io::write_load(warm_load, o); });
      out.text("climate/" + warm.name + "/shiftable.csv", [&](std::ostream& o) { io::write_shiftable(warm.regions, o); });
      scenarios.push_back(std::move(warm));
    }
    return 0;
  });

  stage("flatten", log, [&] {
    const auto pools = pool_by_level(scenarios[0].regions, config.pool, config.pool_offset_hours);
    for (const double alpha : config.alphas) {
      std::vector<FlattenedDay> days;
      for (const auto& p : pools) {
        auto f = flatten_series(with_alpha(p, alpha));
        std::move(f.days.begin(), f.days.end(), std::back_inserter(days));
      }
      out.text("flattened/" + to_string(config.pool) + "_alpha" + alpha_tag(alpha) + ".csv",
               [&](std::ostream& o) { io::write_flattened(days, o); });
    }
    return 0;
  });

  stage("report", log, [&] {
    ReportOptions ro;
    ro.alphas = config.alphas;
    ro.seasons = config.seasons;
    ro.percentile_alphas = config.percentile_alphas;
    ro.reference_offset_hours = config.pool_offset_hours;
    ro.include_alpha_sweep = config.alpha_sweep;
    result.report = build_report(scenarios, ro);
    out.text("report/report.json", [&](std::ostream& o) { write_report_json(result.report, o); });
    out.text("report/report.csv", [&](std::ostream& o) { write_report_csv(result.report, o); });
    out.text("report/percentiles.csv", [&](std::ostream& o) { write_percentiles_csv(result.report, o); });
    if (config.alpha_sweep) out.text("report/alpha_sweep.csv", [&](std::ostream& o) { write_sweep_csv(result.report, o); });
    out.text("report/tables.txt", [&](std::ostream& o) {
      for (const auto& s : result.report.scenarios) {
        write_table_text(result.report, s, Basis::Daily, o);
        o << '\n';
        write_table_text(result.report, s, Basis::Overall, o);
        o << '\n';
      }
    });
    out.text("report/profiles.csv", [&](std::ostream& o) {
      o << "region_id,season,temp_c,mean_index,count\n";
      for (std::size_t i = 0; i < load.size(); ++i) {
        const auto& s = scenarios[0].regions[i];
        const RegionSpec& r = io::find_region(regions, s.region_id);
        // Mean temperature on the decomposed hours.
        std::vector<double> temp;
        std::vector<std::chrono::year_month_day> dates;
        std::size_t j = 0;
        for (const HourStamp t : s.timestamps) {
          while (j + 1 < weather[i].timestamps.size() && weather[i].timestamps[j] < t) ++j;
          if (weather[i].timestamps[j] != t) throw InputError("weather does not cover " + format_rfc3339(t));
          temp.push_back(weather[i].mean_temp_c[j]);
          dates.push_back(to_local(t, r.day_boundary_offset_hours).date);
        }
        for (const auto& bin : demand_temperature_profile(s.observed_mw, temp, config.profile_bin_c, dates)) {
          o << s.region_id << ',' << to_string(bin.season) << ',' << csv::format_double(bin.center) << ','
            << (bin.mean_index ? csv::format_double(*bin.mean_index) : std::string()) << ',' << bin.count << '\n';
        }
      }
    });
    return 0;
  });

  result.artifacts = out.entries();
  stage("manifest", log, [&] {
    nlohmann::ordered_json j;
    j["schema"] = "gridflex.manifest/1";
    nlohmann::ordered_json inputs;
    if (!config.synthetic) {
      inputs["grid"] = io::sha256_hex(config.grid);
      inputs["regions"] = io::sha256_hex(config.regions);
      inputs["load"] = io::sha256_hex(config.load);
      if (config.normals) inputs["normals"] = io::sha256_hex(*config.normals);
    } else {
      inputs["synthetic_seed"] = config.synthetic->seed;
    }
    j["inputs"] = inputs;
    j["artifacts"] = nlohmann::ordered_json::array();
    for (const auto& a : result.artifacts) {
      j["artifacts"].push_back({{"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}});
    }
    auto o = io::open_output(config.output_dir / "manifest.json");
    o << j.dump(2) << '\n';
    return 0;
  });
  return result;
}

}  // namespace gridflex
