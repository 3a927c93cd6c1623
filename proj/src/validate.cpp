#include "gridflex/validate.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "gridflex/csv.hpp"
#include "gridflex/error.hpp"
#include "gridflex/io.hpp"
#include "gridflex/time.hpp"

namespace gridflex {
namespace {

struct Collector {
  ValidationReport& report;
  std::string file;

  void add(std::size_t line, std::string rule, std::string message) {
    report.issues.push_back({file, line, std::move(rule), std::move(message)});
  }
};

std::optional<csv::Table> load_table(Collector& c, const std::filesystem::path& path,
                                     const std::vector<std::string>& header) {
  try {
    csv::Table t = csv::read_file(path.string());
    if (t.header != header) {
      std::string want;
      for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
      c.add(1, "header", "expected columns " + want);
      return std::nullopt;
    }
    return t;
  } catch (const InputError& e) {
    c.add(0, "schema", e.what());
    return std::nullopt;
  }
}

std::optional<HourStamp> timestamp(Collector& c, const csv::Row& row, const std::string& field) {
  try {
    return parse_rfc3339(field);
  } catch (const InputError& e) {
    c.add(row.line, "timestamp_utc is RFC 3339 on the hour", e.what());
    return std::nullopt;
  }
}

std::optional<double> number(Collector& c, const csv::Row& row, const std::string& column, const std::string& field) {
  try {
    const double v = csv::parse_double(field, "");
    if (!std::isfinite(v)) {
      c.add(row.line, column + " is finite", column + " = " + field);
      return std::nullopt;
    }
    return v;
  } catch (const InputError&) {
    c.add(row.line, column + " is numeric", column + " = '" + field + "'");
    return std::nullopt;
  }
}

struct Coverage {
  HourStamp first{}, last{};
  bool any = false;
};

void check_load(ValidationReport& report, const std::filesystem::path& path, std::map<std::string, Coverage>& cover) {
  Collector c{report, path.string()};
  const auto table = load_table(c, path, {"region_id", "timestamp_utc", "demand_mw"});
  if (!table) return;
  std::map<std::string, std::pair<HourStamp, std::size_t>> previous;
  for (const auto& row : table->rows) {
    const std::string& region = row.fields[0];
    if (region.empty()) c.add(row.line, "region_id is present", "empty region_id");
    const auto t = timestamp(c, row, row.fields[1]);
    const std::string& demand = row.fields[2];
    if (!(demand.empty() || demand == "NA")) {
      if (const auto v = number(c, row, "demand_mw", demand); v && !(*v > 0.0)) {
        c.add(row.line, "demand_mw > 0", "demand_mw = " + demand + " for region " + region);
      }
    }
    if (!t) continue;
    auto& cov = cover[region];
    if (!cov.any) cov.first = *t;
    cov.any = true;
    cov.last = *t;
    auto it = previous.find(region);
    if (it != previous.end()) {
      const auto [prev, prev_line] = it->second;
      const std::int64_t step = *t - prev;
      if (step <= 0) {
        c.add(row.line, "timestamps strictly increasing",
              "region " + region + ": " + format_rfc3339(*t) + " follows " + format_rfc3339(prev));
      } else if (step > 1) {
        c.add(row.line, "hourly continuity",
              "region " + region + ": gap of " + std::to_string(step - 1) + " missing hour(s) from " +
                  format_rfc3339(prev + 1) + " to " + format_rfc3339(*t + (-1)) + " (after line " +
                  std::to_string(prev_line) + ")");
      }
    }
    previous[region] = {*t, row.line};
  }
}

std::set<std::string> check_grid(ValidationReport& report, const std::filesystem::path& path, Coverage& cover) {
  Collector c{report, path.string()};
  std::set<std::string> cells;
  const auto table = load_table(c, path, {"cell_id", "latitude", "longitude", "timestamp_utc", "temp_c"});
  if (!table) return cells;
  for (const auto& row : table->rows) {
    cells.insert(row.fields[0]);
    if (const auto lat = number(c, row, "latitude", row.fields[1]); lat && std::abs(*lat) > 90.0) {
      c.add(row.line, "latitude in [-90, 90]", "latitude = " + row.fields[1]);
    }
    if (const auto lon = number(c, row, "longitude", row.fields[2]); lon && std::abs(*lon) > 180.0) {
      c.add(row.line, "longitude in [-180, 180]", "longitude = " + row.fields[2]);
    }
    number(c, row, "temp_c", row.fields[4]);
    timestamp(c, row, row.fields[3]);
  }
  if (report.issues.empty()) {
    // Structural checks need a parsable grid.
    try {
      const TemperatureGrid grid = io::read_grid(path);
      const std::int64_t step = grid.hour_count() > 1 ? grid.uniform_step_hours() : 1;
      // Hours within one step of the ends are filled by constant extension.
      if (!grid.timestamps.empty()) {
        cover = {grid.timestamps.front() + (1 - step), grid.timestamps.back() + (step - 1), true};
      }
    } catch (const InputError& e) {
      c.add(0, "grid is a complete uniform cell × time rectangle", e.what());
    }
  }
  return cells;
}

void check_regions(ValidationReport& report, const std::filesystem::path& path, const std::set<std::string>& grid_cells,
                   bool have_grid, std::set<std::string>& region_ids, std::set<std::string>& region_cells) {
  Collector c{report, path.string()};
  const auto table =
      load_table(c, path, {"region_id", "interconnect", "cell_id", "population_weight", "day_boundary_offset_hours"});
  if (!table) return;
  std::map<std::string, double> weight_sum;
  for (const auto& row : table->rows) {
    region_ids.insert(row.fields[0]);
    region_cells.insert(row.fields[2]);
    try {
      parse_interconnect(row.fields[1]);
    } catch (const InputError& e) {
      c.add(row.line, "interconnect in {east, west, ercot}", e.what());
    }
    if (const auto w = number(c, row, "population_weight", row.fields[3])) {
      if (*w < 0.0) c.add(row.line, "population_weight >= 0", "population_weight = " + row.fields[3]);
      weight_sum[row.fields[0]] += *w;
    }
    try {
      const long off = csv::parse_long(row.fields[4], "");
      if (off < -23 || off > 23) c.add(row.line, "day_boundary_offset_hours in [-23, 23]", row.fields[4]);
    } catch (const InputError&) {
      c.add(row.line, "day_boundary_offset_hours is an integer", row.fields[4]);
    }
    if (have_grid && !grid_cells.contains(row.fields[2])) {
      c.add(row.line, "cell_id present in grid", "cell " + row.fields[2] + " is not in the grid");
    }
  }
  for (const auto& [region, sum] : weight_sum) {
    if (!(sum > 0.0)) c.add(0, "population weights sum > 0", "region " + region + " has zero total weight");
  }
  if (report.issues.empty()) {
    try {
      io::read_regions(path);
    } catch (const InputError& e) {
      c.add(0, "region rows consistent", e.what());
    }
  }
}

void check_normals(ValidationReport& report, const std::filesystem::path& path, const std::set<std::string>& cells) {
  Collector c{report, path.string()};
  const auto table = load_table(c, path, {"cell_id", "mean_cdh", "mean_hdh"});
  if (!table) return;
  std::set<std::string> seen;
  for (const auto& row : table->rows) {
    seen.insert(row.fields[0]);
    for (std::size_t k = 1; k <= 2; ++k) {
      const std::string col = k == 1 ? "mean_cdh" : "mean_hdh";
      if (const auto v = number(c, row, col, row.fields[k]); v && *v < 0.0) {
        c.add(row.line, col + " >= 0", col + " = " + row.fields[k]);
      }
    }
  }
  for (const auto& cell : cells) {
    if (!seen.contains(cell)) c.add(0, "normals cover every region cell", "no normals for cell " + cell);
  }
}

}  // namespace

ValidationReport validate_inputs(const ValidationInputs& inputs) {
  ValidationReport report;
  const auto exists = [&](const std::optional<std::filesystem::path>& p) {
    if (!p) return false;
    if (!std::filesystem::is_regular_file(*p)) {
      report.issues.push_back({p->string(), 0, "file readable", "cannot open " + p->string()});
      return false;
    }
    return true;
  };
  std::set<std::string> grid_cells, region_ids, region_cells;
  Coverage grid_cover;
  std::map<std::string, Coverage> load_cover;
  const bool have_grid = exists(inputs.grid);
  if (have_grid) grid_cells = check_grid(report, *inputs.grid, grid_cover);
  if (exists(inputs.regions)) check_regions(report, *inputs.regions, grid_cells, have_grid, region_ids, region_cells);
  if (exists(inputs.load)) {
    check_load(report, *inputs.load, load_cover);
    if (inputs.regions) {
      for (const auto& [region, cov] : load_cover) {
        if (!region_ids.empty() && !region_ids.contains(region)) {
          report.issues.push_back({inputs.load->string(), 0, "load region defined in region file",
                                   "region " + region + " has load but no region definition"});
        }
      }
    }
    if (grid_cover.any) {
      for (const auto& [region, cov] : load_cover) {
        if (cov.any && (cov.first < grid_cover.first || grid_cover.last < cov.last)) {
          report.issues.push_back({inputs.load->string(), 0, "grid covers load hours",
                                   "region " + region + " load spans " + format_rfc3339(cov.first) + " to " +
                                       format_rfc3339(cov.last) + " but the grid spans " +
                                       format_rfc3339(grid_cover.first) + " to " + format_rfc3339(grid_cover.last)});
        }
      }
    }
  }
  if (exists(inputs.normals)) check_normals(report, *inputs.normals, region_cells);
  return report;
}

void write_validation_json(const ValidationReport& report, std::ostream& out) {
  nlohmann::ordered_json j;
  j["ok"] = report.ok();
  j["issues"] = nlohmann::ordered_json::array();
  for (const auto& i : report.issues) {
    j["issues"].push_back({{"file", i.file}, {"line", i.line}, {"rule", i.rule}, {"message", i.message}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace gridflex
