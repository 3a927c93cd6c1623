#pragma once
// End-to-end orchestration: validation, weather, model selection and fit,
// decomposition, flattening, reports, and a manifest of content hashes.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gridflex/report.hpp"
#include "gridflex/synthetic.hpp"

namespace gridflex {

struct PipelineConfig {
  std::filesystem::path grid;  // CSV, or a binary grid cache (.gfxgrid)
  std::filesystem::path regions;
  std::filesystem::path load;
  std::optional<std::filesystem::path> normals;  // in-sample normals when absent
  std::filesystem::path output_dir = "gridflex_out";

  double threshold_c = kDefaultThresholdC;
  bool cross_validate = true;
  SpecGrid spec_grid{};
  ModelSpec spec{};  // used when cross_validate is false
  bool include_climate_interactions = false;
  std::optional<int> nw_max_lag = 24;
  bool allow_min_norm = true;

  std::vector<double> alphas{0.0, 0.25, 0.5, 1.0};
  std::vector<double> percentile_alphas{0.0, 0.5, 1.0};
  std::vector<Season> seasons{Season::All, Season::Winter, Season::Summer};
  PoolLevel pool = PoolLevel::Region;  // level written to the flattened files
  int pool_offset_hours = kDefaultPoolOffsetHours;
  std::optional<double> delta_t;  // adds a warming scenario
  bool alpha_sweep = true;
  double profile_bin_c = 1.0;

  // Synthetic mode: fixtures are generated into output_dir/fixtures first.
  std::optional<SyntheticSpec> synthetic;
};

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct PipelineResult {
  std::vector<ManifestEntry> artifacts;
  std::vector<CvTable> cv;
  std::vector<FittedDemandModel> models;
  FlattenReport report;
};

// Stage failures are rethrown with the stage name prefixed.
PipelineResult run_pipeline(const PipelineConfig& config, std::ostream* log = nullptr);

TemperatureGrid read_any_grid(const std::filesystem::path& path);
std::string scenario_name(double delta_t);

}  // namespace gridflex
