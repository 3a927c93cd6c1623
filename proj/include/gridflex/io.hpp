#pragma once
// Readers and writers for every artifact: CSV tables, the model JSON, the
// binary hourly-grid cache, and SHA-256 content hashes.

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridflex/flatten.hpp"
#include "gridflex/regress.hpp"
#include "gridflex/shiftable.hpp"
#include "gridflex/weather.hpp"

namespace gridflex::io {

namespace fs = std::filesystem;

// cell_id,latitude,longitude,timestamp_utc,temp_c with every cell sampled at
// the same timestamps.
TemperatureGrid read_grid(std::istream& in, const std::string& source);
TemperatureGrid read_grid(const fs::path& path);
void write_grid(const TemperatureGrid& grid, std::ostream& out);

// Binary cache: "GFXGRID1", u32 version, u32 reserved, u64 cells, u64 hours,
// i64 first hour, i64 step hours; per cell u32 id length, id bytes, f64 lat,
// f64 lon; then cells × hours float32 temperatures, row-major. Little-endian.
void write_grid_cache(const TemperatureGrid& grid, const fs::path& path);
TemperatureGrid read_grid_cache(const fs::path& path);

// region_id,interconnect,cell_id,population_weight,day_boundary_offset_hours
std::vector<RegionSpec> read_regions(std::istream& in, const std::string& source);
std::vector<RegionSpec> read_regions(const fs::path& path);
void write_regions(const std::vector<RegionSpec>& regions, std::ostream& out);
const RegionSpec& find_region(const std::vector<RegionSpec>& regions, const std::string& region_id);

// cell_id,mean_cdh,mean_hdh
NormalsTable read_normals(std::istream& in, const std::string& source);
NormalsTable read_normals(const fs::path& path);
void write_normals(const NormalsTable& normals, std::ostream& out);

// region_id,timestamp_utc,demand_mw; an empty or NA demand is a masked hour.
std::vector<LoadSeries> read_load(std::istream& in, const std::string& source);
std::vector<LoadSeries> read_load(const fs::path& path);
void write_load(const std::vector<LoadSeries>& load, std::ostream& out);

// region_id,timestamp_utc,temp_c,cdh,hdh,cdh_interaction,hdh_interaction
std::vector<RegionalWeather> read_weather(std::istream& in, const std::string& source);
std::vector<RegionalWeather> read_weather(const fs::path& path);
void write_weather(const std::vector<RegionalWeather>& weather, std::ostream& out);

// region_id,timestamp_utc,observed_mw,hard_mw,flexible_mw,share,
// interconnect,day_boundary_offset_hours,alpha
std::vector<ShiftableSeries> read_shiftable(std::istream& in, const std::string& source);
std::vector<ShiftableSeries> read_shiftable(const fs::path& path);
void write_shiftable(const std::vector<ShiftableSeries>& series, std::ostream& out);

// pool_id,date,hour,observed_mw,hard_mw,flattened_mw,fully_flat,level
void write_flattened(const std::vector<FlattenedDay>& days, std::ostream& out);
std::vector<FlattenedDay> read_flattened(std::istream& in, const std::string& source);

void write_model(const FittedDemandModel& model, std::ostream& out);
FittedDemandModel read_model(std::istream& in, const std::string& source);
void write_models(const std::vector<FittedDemandModel>& models, const fs::path& path);
std::vector<FittedDemandModel> read_models(const fs::path& path);

// region_id,knots_hod,knots_hoy,include_weather,include_climate_interactions,
// parameters,fold_years,fold_r2,mean_r2,best
void write_cv(const std::vector<CvTable>& tables, std::ostream& out);
std::vector<CvTable> read_cv(std::istream& in, const std::string& source);

std::string sha256_hex(const fs::path& path);
std::string sha256_hex_bytes(const std::string& bytes);

// Opens for writing, creating parent directories; throws InputError on failure.
std::ofstream open_output(const fs::path& path, bool binary = false);
std::string read_text(const fs::path& path);

}  // namespace gridflex::io
