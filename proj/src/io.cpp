#include "gridflex/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gridflex/csv.hpp"
#include "gridflex/error.hpp"

namespace gridflex::io {
namespace {

using nlohmann::ordered_json;

static_assert(std::endian::native == std::endian::little, "grid cache assumes a little-endian host");

std::ifstream open_input(const fs::path& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

template <typename Reader>
auto read_path(const fs::path& path, Reader reader) {
  auto in = open_input(path);
  return reader(in, path.string());
}

bool is_missing(const std::string& field) { return field.empty() || field == "NA" || field == "NaN" || field == "nan"; }

std::string cell(const std::vector<std::string>& fields, std::size_t i) { return i < fields.size() ? fields[i] : ""; }

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in, const std::string& source) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw InputError(source + ": truncated grid cache");
  return v;
}

constexpr char kGridMagic[8] = {'G', 'F', 'X', 'G', 'R', 'I', 'D', '1'};
constexpr std::uint32_t kGridVersion = 1;

// Per-region series keyed in first-seen order.
template <typename T>
T& series_for(std::vector<T>& all, std::map<std::string, std::size_t>& index, const std::string& id) {
  auto [it, inserted] = index.try_emplace(id, all.size());
  if (inserted) {
    all.emplace_back();
    all.back().region_id = id;
  }
  return all[it->second];
}

void require_increasing(const std::vector<HourStamp>& ts, const std::string& what, const std::string& where) {
  if (!ts.empty() && ts.size() >= 2 && !(ts[ts.size() - 2] < ts.back())) {
    throw InputError(where + ": timestamps for " + what + " must be strictly increasing");
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + csv::format_double(v[i]);
  return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

bool parse_bool(const std::string& field, const std::string& where) {
  if (field == "1" || field == "true") return true;
  if (field == "0" || field == "false") return false;
  throw InputError(where + ": expected a boolean, got '" + field + "'");
}

}  // namespace

// ---------------------------------------------------------------- grid

TemperatureGrid read_grid(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  csv::require_header(table, {"cell_id", "latitude", "longitude", "timestamp_utc", "temp_c"});
  std::map<std::string, std::size_t> cell_index;
  std::map<HourStamp, std::size_t> time_index;
  std::vector<GridCell> cells;
  struct Sample {
    std::size_t cell;
    HourStamp t;
    double temp;
    const csv::Row* row;
  };
  std::vector<Sample> samples;
  samples.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    const std::string where = csv::where(table, row);
    const GridCell c{row.fields[0], csv::parse_double(row.fields[1], where), csv::parse_double(row.fields[2], where)};
    auto [it, inserted] = cell_index.try_emplace(c.cell_id, cells.size());
    if (inserted) {
      cells.push_back(c);
    } else if (cells[it->second].latitude != c.latitude || cells[it->second].longitude != c.longitude) {
      throw InputError(where + ": cell " + c.cell_id + " changes coordinates");
    }
    HourStamp t;
    try {
      t = parse_rfc3339(row.fields[3]);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    time_index.try_emplace(t, 0);
    samples.push_back({it->second, t, csv::parse_double(row.fields[4], where), &row});
  }
  // Cells in ascending id order, timestamps ascending.
  TemperatureGrid grid;
  std::vector<std::size_t> remap(cells.size());
  std::size_t pos = 0;
  for (const auto& [id, idx] : cell_index) {
    remap[idx] = pos++;
    grid.cells.push_back(cells[idx]);
  }
  pos = 0;
  for (auto& [t, idx] : time_index) {
    idx = pos++;
    grid.timestamps.push_back(t);
  }
  const std::size_t hours = grid.timestamps.size();
  grid.temps.assign(grid.cells.size() * hours, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::uint8_t> seen(grid.temps.size(), 0);
  for (const auto& s : samples) {
    const std::size_t k = remap[s.cell] * hours + time_index.at(s.t);
    if (seen[k]) throw InputError(csv::where(table, *s.row) + ": duplicate cell-hour");
    seen[k] = 1;
    grid.temps[k] = s.temp;
  }
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    for (std::size_t h = 0; h < hours; ++h) {
      if (!seen[c * hours + h]) {
        throw InputError(source + ": cell " + grid.cells[c].cell_id + " has no sample at " +
                         format_rfc3339(grid.timestamps[h]));
      }
    }
  }
  return grid;
}

TemperatureGrid read_grid(const fs::path& path) {
  return read_path(path, [](std::istream& in, const std::string& s) { return read_grid(in, s); });
}

void write_grid(const TemperatureGrid& grid, std::ostream& out) {
  out << "cell_id,latitude,longitude,timestamp_utc,temp_c\n";
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const auto& cell = grid.cells[c];
    const std::string prefix =
        cell.cell_id + "," + csv::format_double(cell.latitude) + "," + csv::format_double(cell.longitude) + ",";
    const auto temps = grid.series(c);
    for (std::size_t h = 0; h < grid.hour_count(); ++h) {
      out << prefix << format_rfc3339(grid.timestamps[h]) << ',' << csv::format_double(temps[h]) << '\n';
    }
  }
}

void write_grid_cache(const TemperatureGrid& grid, const fs::path& path) {
  const std::int64_t step = grid.hour_count() > 1 ? grid.uniform_step_hours() : 1;
  auto out = open_output(path, true);
  out.write(kGridMagic, sizeof kGridMagic);
  put(out, kGridVersion);
  put(out, std::uint32_t{0});
  put(out, static_cast<std::uint64_t>(grid.cell_count()));
  put(out, static_cast<std::uint64_t>(grid.hour_count()));
  put(out, grid.timestamps.empty() ? std::int64_t{0} : grid.timestamps.front().hours);
  put(out, step);
  for (const auto& cell : grid.cells) {
    put(out, static_cast<std::uint32_t>(cell.cell_id.size()));
    out.write(cell.cell_id.data(), static_cast<std::streamsize>(cell.cell_id.size()));
    put(out, cell.latitude);
    put(out, cell.longitude);
  }
  std::vector<float> buf(grid.hour_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const auto temps = grid.series(c);
    std::transform(temps.begin(), temps.end(), buf.begin(), [](double v) { return static_cast<float>(v); });
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(float)));
  }
  if (!out) throw InputError("failed writing " + path.string());
}

TemperatureGrid read_grid_cache(const fs::path& path) {
  auto in = open_input(path, true);
  const std::string source = path.string();
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kGridMagic, sizeof magic) != 0) {
    throw InputError(source + ": not a grid cache");
  }
  if (get<std::uint32_t>(in, source) != kGridVersion) throw InputError(source + ": unsupported grid cache version");
  (void)get<std::uint32_t>(in, source);
  const auto cells = get<std::uint64_t>(in, source);
  const auto hours = get<std::uint64_t>(in, source);
  const auto first = get<std::int64_t>(in, source);
  const auto step = get<std::int64_t>(in, source);
  TemperatureGrid grid;
  for (std::uint64_t c = 0; c < cells; ++c) {
    const auto len = get<std::uint32_t>(in, source);
    std::string id(len, '\0');
    if (!in.read(id.data(), len)) throw InputError(source + ": truncated grid cache");
    const double lat = get<double>(in, source);
    const double lon = get<double>(in, source);
    grid.cells.push_back({id, lat, lon});
  }
  for (std::uint64_t h = 0; h < hours; ++h) grid.timestamps.push_back(HourStamp{first + static_cast<std::int64_t>(h) * step});
  grid.temps.resize(cells * hours);
  std::vector<float> buf(hours);
  for (std::uint64_t c = 0; c < cells; ++c) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(hours * sizeof(float)))) {
      throw InputError(source + ": truncated grid cache");
    }
    std::copy(buf.begin(), buf.end(), grid.temps.begin() + static_cast<std::ptrdiff_t>(c * hours));
  }
  return grid;
}

// ---------------------------------------------------------------- regions

std::vector<RegionSpec> read_regions(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  csv::require_header(table,
                      {"region_id", "interconnect", "cell_id", "population_weight", "day_boundary_offset_hours"});
  std::vector<RegionSpec> regions;
  std::map<std::string, std::size_t> index;
  for (const auto& row : table.rows) {
    const std::string where = csv::where(table, row);
    RegionSpec& r = series_for(regions, index, row.fields[0]);
    const bool first = r.cell_weights.empty();
    Interconnect ic;
    try {
      ic = parse_interconnect(row.fields[1]);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    const long offset = csv::parse_long(row.fields[4], where);
    if (offset < -23 || offset > 23) throw InputError(where + ": day_boundary_offset_hours out of range");
    if (first) {
      r.interconnect = ic;
      r.day_boundary_offset_hours = static_cast<int>(offset);
    } else if (r.interconnect != ic || r.day_boundary_offset_hours != offset) {
      throw InputError(where + ": region " + r.region_id + " has inconsistent interconnect or offset");
    }
    const double w = csv::parse_double(row.fields[3], where);
    if (!(w >= 0.0) || !std::isfinite(w)) throw InputError(where + ": population_weight must be >= 0");
    if (!r.cell_weights.emplace(row.fields[2], w).second) {
      throw InputError(where + ": duplicate cell " + row.fields[2] + " in region " + r.region_id);
    }
  }
  return regions;
}

std::vector<RegionSpec> read_regions(const fs::path& path) {
  return read_path(path, [](std::istream& in, const std::string& s) { return read_regions(in, s); });
}

void write_regions(const std::vector<RegionSpec>& regions, std::ostream& out) {
  out << "region_id,interconnect,cell_id,population_weight,day_boundary_offset_hours\n";
  for (const auto& r : regions) {
    for (const auto& [cell_id, w] : r.cell_weights) {
      out << r.region_id << ',' << to_string(r.interconnect) << ',' << cell_id << ',' << csv::format_double(w) << ','
          << r.day_boundary_offset_hours << '\n';
    }
  }
}

const RegionSpec& find_region(const std::vector<RegionSpec>& regions, const std::string& region_id) {
  for (const auto& r : regions) {
    if (r.region_id == region_id) return r;
  }
  throw InputError("region " + region_id + " is not in the region file");
}

// ---------------------------------------------------------------- normals

NormalsTable read_normals(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  csv::require_header(table, {"cell_id", "mean_cdh", "mean_hdh"});
  NormalsTable normals;
  for (const auto& row : table.rows) {
    const std::string where = csv::where(table, row);
    CellNormals n{csv::parse_double(row.fields[1], where), csv::parse_double(row.fields[2], where)};
    if (!normals.emplace(row.fields[0], n).second) throw InputError(where + ": duplicate cell " + row.fields[0]);
  }
  return normals;
}

NormalsTable read_normals(const fs::path& path) {
  return read_path(path, [](std::istream& in, const std::string& s) { return read_normals(in, s); });
}

void write_normals(const NormalsTable& normals, std::ostream& out) {
  out << "cell_id,mean_cdh,mean_hdh\n";
  for (const auto& [id, n] : normals) {
    out << id << ',' << csv::format_double(n.mean_cdh) << ',' << csv::format_double(n.mean_hdh) << '\n';
  }
}

// ---------------------------------------------------------------- load

std::vector<LoadSeries> read_load(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  csv::require_header(table, {"region_id", "timestamp_utc", "demand_mw"});
  std::vector<LoadSeries> load;
  std::map<std::string, std::size_t> index;
  for (const auto& row : table.rows) {
    const std::string where = csv::where(table, row);
    LoadSeries& s = series_for(load, index, row.fields[0]);
    try {
      s.timestamps.push_back(parse_rfc3339(row.fields[1]));
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    require_increasing(s.timestamps, s.region_id, where);
    const std::string field = cell(row.fields, 2);
    if (is_missing(field)) {
      s.demand_mw.push_back(std::numeric_limits<double>::quiet_NaN());
      s.valid.push_back(0);
    } else {
      s.demand_mw.push_back(csv::parse_double(field, where));
      s.valid.push_back(1);
    }
  }
  return load;
}

std::vector<LoadSeries> read_load(const fs::path& path) {
  return read_path(path, [](std::istream& in, const std::string& s) { return read_load(in, s); });
}

void write_load(const std::vector<LoadSeries>& load, std::ostream& out) {
  out << "region_id,timestamp_utc,demand_mw\n";
  for (const auto& s : load) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << s.region_id << ',' << format_rfc3339(s.timestamps[i]) << ',';
      if (s.valid[i]) out << csv::format_double(s.demand_mw[i]);
      out << '\n';
    }
  }
}

// ---------------------------------------------------------------- weather

std::vector<RegionalWeather> read_weather(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  csv::require_header(table, {"region_id", "timestamp_utc", "temp_c", "cdh", "hdh", "cdh_interaction",
                              "hdh_interaction"});
  std::vector<RegionalWeather> weather;
  std::map<std::string, std::size_t> index;
  for (const auto& row : table.rows) {
    const std::string where = csv::where(table, row);
    RegionalWeather& w = series_for(weather, index, row.fields[0]);
    try {
      w.timestamps.push_back(parse_rfc3339(row.fields[1]));
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    require_increasing(w.timestamps, w.region_id, where);
    w.mean_temp_c.push_back(csv::parse_double(row.fields[2], where));
    w.cdh.push_back(csv::parse_double(row.fields[3], where));
    w.hdh.push_back(csv::parse_double(row.fields[4], where));
    const bool inter = !row.fields[5].empty();
    if (inter != !row.fields[6].empty()) throw InputError(where + ": interaction columns must both be present");
    if (inter) {
      if (w.cdh_interaction.size() + 1 != w.cdh.size()) {
        throw InputError(where + ": interaction columns present on only some rows of " + w.region_id);
      }
      w.cdh_interaction.push_back(csv::parse_double(row.fields[5], where));
      w.hdh_interaction.push_back(csv::parse_double(row.fields[6], where));
    } else if (!w.cdh_interaction.empty()) {
      throw InputError(where + ": interaction columns present on only some rows of " + w.region_id);
    }
  }
  for (auto& w : weather) {
    double c = 0.0, h = 0.0;
    for (double v : w.cdh) c += v;
    for (double v : w.hdh) h += v;
    w.mean_cdh = w.cdh.empty() ? 0.0 : c / static_cast<double>(w.cdh.size());
    w.mean_hdh = w.hdh.empty() ? 0.0 : h / static_cast<double>(w.hdh.size());
  }
  return weather;
}

std::vector<RegionalWeather> read_weather(const fs::path& path) {
  return read_path(path, [](std::istream& in, const std::string& s) { return read_weather(in, s); });
}

void write_weather(const std::vector<RegionalWeather>& weather, std::ostream& out) {
  out << "region_id,timestamp_utc,temp_c,cdh,hdh,cdh_interaction,hdh_interaction\n";
  for (const auto& w : weather) {
    const bool inter = w.has_interactions();
    for (std::size_t i = 0; i < w.timestamps.size(); ++i) {
      out << w.region_id << ',' << format_rfc3339(w.timestamps[i]) << ',' << csv::format_double(w.mean_temp_c[i])
          << ',' << csv::format_double(w.cdh[i]) << ',' << csv::format_double(w.hdh[i]) << ',';
      if (inter) out << csv::format_double(w.cdh_interaction[i]) << ',' << csv::format_double(w.hdh_interaction[i]);
      else out << ',';
      out << '\n';
    }
  }
}

// ---------------------------------------------------------------- shiftable

std::vector<ShiftableSeries> read_shiftable(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  csv::require_header(table, {"region_id", "timestamp_utc", "observed_mw", "hard_mw", "flexible_mw", "share",
                              "interconnect", "day_boundary_offset_hours", "alpha"});
  std::vector<ShiftableSeries> all;
  std::map<std::string, std::size_t> index;
  for (const auto& row : table.rows) {
    const std::string where = csv::where(table, row);
    ShiftableSeries& s = series_for(all, index, row.fields[0]);
    Interconnect ic;
    try {
      ic = parse_interconnect(row.fields[6]);
      s.timestamps.push_back(parse_rfc3339(row.fields[1]));
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    const int offset = static_cast<int>(csv::parse_long(row.fields[7], where));
    const double alpha = csv::parse_double(row.fields[8], where);
    if (s.timestamps.size() == 1) {
      s.interconnect = ic;
      s.day_boundary_offset_hours = offset;
      s.alpha = alpha;
    } else if (s.interconnect != ic || s.day_boundary_offset_hours != offset || s.alpha != alpha) {
      throw InputError(where + ": region " + s.region_id + " changes interconnect, offset or alpha");
    }
    require_increasing(s.timestamps, s.region_id, where);
    s.observed_mw.push_back(csv::parse_double(row.fields[2], where));
    s.hard_mw.push_back(csv::parse_double(row.fields[3], where));
    s.flexible_mw.push_back(csv::parse_double(row.fields[4], where));
    s.share.push_back(csv::parse_double(row.fields[5], where));
  }
  return all;
}

std::vector<ShiftableSeries> read_shiftable(const fs::path& path) {
  return read_path(path, [](std::istream& in, const std::string& s) { return read_shiftable(in, s); });
}

void write_shiftable(const std::vector<ShiftableSeries>& series, std::ostream& out) {
  out << "region_id,timestamp_utc,observed_mw,hard_mw,flexible_mw,share,interconnect,day_boundary_offset_hours,alpha\n";
  for (const auto& s : series) {
    const std::string suffix = "," + to_string(s.interconnect) + "," + std::to_string(s.day_boundary_offset_hours) +
                               "," + csv::format_double(s.alpha) + "\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << s.region_id << ',' << format_rfc3339(s.timestamps[i]) << ',' << csv::format_double(s.observed_mw[i])
          << ',' << csv::format_double(s.hard_mw[i]) << ',' << csv::format_double(s.flexible_mw[i]) << ','
          << csv::format_double(s.share[i]) << suffix;
    }
  }
}

// ---------------------------------------------------------------- flattened

void write_flattened(const std::vector<FlattenedDay>& days, std::ostream& out) {
  out << "pool_id,date,hour,observed_mw,hard_mw,flattened_mw,fully_flat,level\n";
  for (const auto& d : days) {
    const std::string prefix = d.pool_id + "," + format_date(d.date) + ",";
    for (std::size_t h = 0; h < d.profile.size(); ++h) {
      out << prefix << h << ',' << csv::format_double(d.observed[h]) << ',' << csv::format_double(d.hard[h]) << ','
          << csv::format_double(d.profile[h]) << ',' << (d.fully_flat ? 1 : 0) << ','
          << csv::format_double(d.level) << '\n';
    }
  }
}

std::vector<FlattenedDay> read_flattened(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  csv::require_header(table,
                      {"pool_id", "date", "hour", "observed_mw", "hard_mw", "flattened_mw", "fully_flat", "level"});
  std::vector<FlattenedDay> days;
  for (const auto& row : table.rows) {
    const std::string where = csv::where(table, row);
    const long hour = csv::parse_long(row.fields[2], where);
    if (hour == 0) {
      FlattenedDay d;
      d.pool_id = row.fields[0];
      int y = 0;
      unsigned m = 0, dd = 0;
      if (std::sscanf(row.fields[1].c_str(), "%d-%u-%u", &y, &m, &dd) != 3) throw InputError(where + ": bad date");
      d.date = std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{dd}};
      d.fully_flat = parse_bool(row.fields[6], where);
      d.level = csv::parse_double(row.fields[7], where);
      days.push_back(std::move(d));
    } else if (days.empty() || days.back().pool_id != row.fields[0] ||
               static_cast<long>(days.back().profile.size()) != hour) {
      throw InputError(where + ": hours of a day must be consecutive from 0");
    }
    auto& d = days.back();
    d.observed.push_back(csv::parse_double(row.fields[3], where));
    d.hard.push_back(csv::parse_double(row.fields[4], where));
    d.profile.push_back(csv::parse_double(row.fields[5], where));
  }
  return days;
}

// ---------------------------------------------------------------- models

namespace {

ordered_json spec_json(const ModelSpec& s) {
  return {{"knots_hod", s.knots_hod},
          {"knots_hoy", s.knots_hoy},
          {"include_weather", s.include_weather},
          {"include_climate_interactions", s.include_climate_interactions}};
}

ModelSpec spec_from(const ordered_json& j) {
  ModelSpec s;
  s.knots_hod = j.at("knots_hod").get<int>();
  s.knots_hoy = j.at("knots_hoy").get<int>();
  s.include_weather = j.at("include_weather").get<bool>();
  s.include_climate_interactions = j.at("include_climate_interactions").get<bool>();
  s.validate();
  return s;
}

ordered_json model_json(const FittedDemandModel& m) {
  ordered_json j;
  j["schema"] = "gridflex.model/1";
  j["region_id"] = m.region_id;
  j["spec"] = spec_json(m.spec);
  j["day_boundary_offset_hours"] = m.day_boundary_offset_hours;
  j["knots_hod"] = m.knots_hod;
  j["knots_hoy"] = m.knots_hoy;
  j["coefficients"] = m.coefficients;
  // Training hours as [first, count] runs of consecutive hours.
  ordered_json spans = ordered_json::array();
  for (std::size_t i = 0; i < m.timestamps.size();) {
    std::size_t k = i + 1;
    while (k < m.timestamps.size() && m.timestamps[k] - m.timestamps[k - 1] == 1) ++k;
    spans.push_back({format_rfc3339(m.timestamps[i]), k - i});
    i = k;
  }
  j["training_spans"] = spans;
  j["residuals"] = m.residuals;
  j["se"] = m.se;
  j["nw_max_lag"] = m.nw_max_lag;
  j["in_sample_r2"] = m.in_sample_r2;
  j["rmse"] = m.rmse;
  j["cv_r2"] = m.cv_r2 ? ordered_json(*m.cv_r2) : ordered_json(nullptr);
  j["rank"] = m.rank;
  j["rank_deficient"] = m.rank_deficient;
  return j;
}

FittedDemandModel model_from(const ordered_json& j, const std::string& source) {
  if (j.value("schema", "") != "gridflex.model/1") throw InputError(source + ": not a gridflex model");
  FittedDemandModel m;
  m.region_id = j.at("region_id").get<std::string>();
  m.spec = spec_from(j.at("spec"));
  m.day_boundary_offset_hours = j.at("day_boundary_offset_hours").get<int>();
  m.knots_hod = j.at("knots_hod").get<std::vector<double>>();
  m.knots_hoy = j.at("knots_hoy").get<std::vector<double>>();
  m.coefficients = j.at("coefficients").get<std::vector<double>>();
  for (const auto& span : j.at("training_spans")) {
    const HourStamp first = parse_rfc3339(span.at(0).get<std::string>());
    const auto count = span.at(1).get<std::int64_t>();
    for (std::int64_t h = 0; h < count; ++h) m.timestamps.push_back(first + h);
  }
  m.residuals = j.at("residuals").get<std::vector<double>>();
  m.se = j.at("se").get<std::vector<double>>();
  m.nw_max_lag = j.at("nw_max_lag").get<int>();
  m.in_sample_r2 = j.at("in_sample_r2").get<double>();
  m.rmse = j.at("rmse").get<double>();
  if (!j.at("cv_r2").is_null()) m.cv_r2 = j.at("cv_r2").get<double>();
  m.rank = j.at("rank").get<std::size_t>();
  m.rank_deficient = j.at("rank_deficient").get<bool>();
  if (m.coefficients.size() != m.spec.parameter_count()) {
    throw InputError(source + ": coefficient count does not match the model spec");
  }
  if (m.residuals.size() != m.timestamps.size()) throw InputError(source + ": residuals do not cover training hours");
  return m;
}

}  // namespace

void write_model(const FittedDemandModel& model, std::ostream& out) { out << model_json(model).dump(1) << '\n'; }

FittedDemandModel read_model(std::istream& in, const std::string& source) {
  try {
    return model_from(ordered_json::parse(in), source);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(source + ": " + e.what());
  }
}

void write_models(const std::vector<FittedDemandModel>& models, const fs::path& path) {
  ordered_json j;
  j["schema"] = "gridflex.models/1";
  j["models"] = ordered_json::array();
  for (const auto& m : models) j["models"].push_back(model_json(m));
  auto out = open_output(path);
  out << j.dump(1) << '\n';
}

std::vector<FittedDemandModel> read_models(const fs::path& path) {
  auto in = open_input(path);
  try {
    const auto j = ordered_json::parse(in);
    std::vector<FittedDemandModel> models;
    if (j.value("schema", "") == "gridflex.model/1") {
      models.push_back(model_from(j, path.string()));
    } else if (j.value("schema", "") == "gridflex.models/1") {
      for (const auto& m : j.at("models")) models.push_back(model_from(m, path.string()));
    } else {
      throw InputError(path.string() + ": not a gridflex model file");
    }
    return models;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------- cv

void write_cv(const std::vector<CvTable>& tables, std::ostream& out) {
  out << "region_id,knots_hod,knots_hoy,include_weather,include_climate_interactions,parameters,fold_years,fold_r2,"
         "mean_r2,best\n";
  for (const auto& t : tables) {
    for (const auto& r : t.results) {
      out << t.region_id << ',' << r.spec.knots_hod << ',' << r.spec.knots_hoy << ',' << (r.spec.include_weather ? 1 : 0)
          << ',' << (r.spec.include_climate_interactions ? 1 : 0) << ',' << r.spec.parameter_count() << ','
          << join_ints(r.fold_years) << ',' << join_doubles(r.fold_r2) << ',' << csv::format_double(r.mean_r2) << ','
          << (r.spec == t.best ? 1 : 0) << '\n';
    }
  }
}

std::vector<CvTable> read_cv(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  csv::require_header(table, {"region_id", "knots_hod", "knots_hoy", "include_weather", "include_climate_interactions",
                              "parameters", "fold_years", "fold_r2", "mean_r2", "best"});
  std::vector<CvTable> tables;
  std::map<std::string, std::size_t> index;
  for (const auto& row : table.rows) {
    const std::string where = csv::where(table, row);
    CvTable& t = series_for(tables, index, row.fields[0]);
    CvResult r;
    r.spec.knots_hod = static_cast<int>(csv::parse_long(row.fields[1], where));
    r.spec.knots_hoy = static_cast<int>(csv::parse_long(row.fields[2], where));
    r.spec.include_weather = parse_bool(row.fields[3], where);
    r.spec.include_climate_interactions = parse_bool(row.fields[4], where);
    for (const auto& y : split(row.fields[6], ';')) r.fold_years.push_back(static_cast<int>(csv::parse_long(y, where)));
    for (const auto& v : split(row.fields[7], ';')) r.fold_r2.push_back(csv::parse_double(v, where));
    r.mean_r2 = csv::parse_double(row.fields[8], where);
    if (parse_bool(row.fields[9], where)) {
      t.best = r.spec;
      t.best_r2 = r.mean_r2;
    }
    t.results.push_back(std::move(r));
  }
  return tables;
}

// ---------------------------------------------------------------- hashing and files

std::string sha256_hex_bytes(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw NumericalError("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

std::string sha256_hex(const fs::path& path) {
  auto in = open_input(path, true);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex_bytes(buf.str());
}

std::ofstream open_output(const fs::path& path, bool binary) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

std::string read_text(const fs::path& path) {
  auto in = open_input(path, true);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace gridflex::io
