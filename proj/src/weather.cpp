#include "gridflex/weather.hpp"

#include <algorithm>
#include <cmath>

#include "gridflex/error.hpp"
#include "gridflex/kernels.hpp"

namespace gridflex {

std::string to_string(Interconnect ic) {
  switch (ic) {
    case Interconnect::East: return "East";
    case Interconnect::West: return "West";
    case Interconnect::Ercot: return "ERCOT";
  }
  return "East";
}

Interconnect parse_interconnect(const std::string& text) {
  std::string upper = text;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "EAST" || upper == "EASTERN") return Interconnect::East;
  if (upper == "WEST" || upper == "WESTERN") return Interconnect::West;
  if (upper == "ERCOT" || upper == "TEXAS") return Interconnect::Ercot;
  throw InputError("unknown interconnect '" + text + "'");
}

std::optional<std::size_t> TemperatureGrid::find_cell(const std::string& cell_id) const {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].cell_id == cell_id) return i;
  }
  return std::nullopt;
}

std::int64_t TemperatureGrid::uniform_step_hours() const {
  if (timestamps.size() < 2) throw InputError("temperature grid needs at least 2 timestamps");
  const std::int64_t step = timestamps[1] - timestamps[0];
  if (step <= 0) throw InputError("temperature grid timestamps are not increasing");
  for (std::size_t i = 2; i < timestamps.size(); ++i) {
    if (timestamps[i] - timestamps[i - 1] != step) {
      throw InputError("non-uniform grid spacing at " + format_rfc3339(timestamps[i - 1]) + " -> " +
                       format_rfc3339(timestamps[i]));
    }
  }
  return step;
}

DegreeHours degree_hours(double temp_c, double threshold_c) {
  const double up = temp_c - threshold_c;
  const double down = threshold_c - temp_c;
  return {up > 0.0 ? up : 0.0, down > 0.0 ? down : 0.0};
}

TemperatureGrid interpolate_to_hourly(const TemperatureGrid& grid, std::optional<HourStamp> first,
                                      std::optional<HourStamp> last) {
  const std::int64_t step = grid.uniform_step_hours();
  const HourStamp t0 = first.value_or(grid.timestamps.front());
  const HourStamp t1 = last.value_or(grid.timestamps.back());
  if (t1 < t0) throw InputError("interpolation range is empty");

  TemperatureGrid out;
  out.cells = grid.cells;
  const std::size_t hours = static_cast<std::size_t>(t1 - t0) + 1;
  out.timestamps.reserve(hours);
  for (std::size_t h = 0; h < hours; ++h) out.timestamps.push_back(t0 + static_cast<std::int64_t>(h));
  out.temps.assign(grid.cell_count() * hours, 0.0);

  const HourStamp s0 = grid.timestamps.front();
  const std::size_t last_sample = grid.hour_count() - 1;
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const auto src = grid.series(c);
    auto dst = out.series(c);
    for (std::size_t h = 0; h < hours; ++h) {
      const std::int64_t rel = out.timestamps[h] - s0;
      if (rel <= 0) {
        dst[h] = src.front();
        continue;
      }
      const std::size_t idx = static_cast<std::size_t>(rel / step);
      if (idx >= last_sample) {
        dst[h] = src[last_sample];
        continue;
      }
      const std::int64_t k = rel % step;
      const double a = src[idx];
      const double b = src[idx + 1];
      if (k == 0) {
        dst[h] = a;
      } else {
        const double v = a + ((b - a) * static_cast<double>(k)) / static_cast<double>(step);
        dst[h] = std::clamp(v, std::min(a, b), std::max(a, b));
      }
    }
  }
  return out;
}

namespace {

struct ResolvedCell {
  std::size_t index;
  double weight;  // normalized to sum to 1 over the region
  const std::string* cell_id;
};

std::vector<ResolvedCell> resolve_cells(const TemperatureGrid& grid, const RegionSpec& region) {
  double total = 0.0;
  std::vector<ResolvedCell> cells;
  for (const auto& [cell_id, weight] : region.cell_weights) {
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
      throw InputError("region " + region.region_id + ": negative or non-finite weight for cell " + cell_id);
    }
    const auto idx = grid.find_cell(cell_id);
    if (!idx) throw InputError("region " + region.region_id + ": cell " + cell_id + " not in temperature grid");
    total += weight;
    cells.push_back({*idx, weight, &cell_id});
  }
  if (!(total > 0.0)) throw InputError("region " + region.region_id + ": total population weight is zero");
  for (auto& c : cells) c.weight /= total;
  return cells;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

RegionalWeather aggregate_impl(const TemperatureGrid& hourly, const RegionSpec& region, double threshold_c,
                               const NormalsTable* normals) {
  const auto cells = resolve_cells(hourly, region);
  const std::size_t n = hourly.hour_count();

  RegionalWeather out;
  out.region_id = region.region_id;
  out.timestamps = hourly.timestamps;
  out.mean_temp_c.assign(n, 0.0);
  out.cdh.assign(n, 0.0);
  out.hdh.assign(n, 0.0);
  if (normals != nullptr) {
    out.cdh_interaction.assign(n, 0.0);
    out.hdh_interaction.assign(n, 0.0);
  }

  std::vector<double> cell_cdh(n), cell_hdh(n);
  for (const auto& cell : cells) {
    const auto temps = hourly.series(cell.index);
    kernels::degree_hours(temps, threshold_c, cell_cdh, cell_hdh);
    kernels::axpy(cell.weight, temps, out.mean_temp_c);
    kernels::axpy(cell.weight, cell_cdh, out.cdh);
    kernels::axpy(cell.weight, cell_hdh, out.hdh);
    if (normals != nullptr) {
      const auto it = normals->find(*cell.cell_id);
      if (it == normals->end()) {
        throw InputError("region " + region.region_id + ": no climate normals for cell " + *cell.cell_id);
      }
      kernels::axpy(cell.weight * it->second.mean_cdh, cell_cdh, out.cdh_interaction);
      kernels::axpy(cell.weight * it->second.mean_hdh, cell_hdh, out.hdh_interaction);
    }
  }
  out.mean_cdh = mean_of(out.cdh);
  out.mean_hdh = mean_of(out.hdh);
  return out;
}

}  // namespace

RegionalWeather aggregate_region(const TemperatureGrid& hourly, const RegionSpec& region, double threshold_c) {
  return aggregate_impl(hourly, region, threshold_c, nullptr);
}

RegionalWeather climate_interaction_aggregates(const TemperatureGrid& hourly, const RegionSpec& region,
                                               const NormalsTable& normals, double threshold_c) {
  return aggregate_impl(hourly, region, threshold_c, &normals);
}

NormalsTable in_sample_normals(const TemperatureGrid& hourly, double threshold_c) {
  NormalsTable table;
  const std::size_t n = hourly.hour_count();
  std::vector<double> cdh(n), hdh(n);
  for (std::size_t c = 0; c < hourly.cell_count(); ++c) {
    kernels::degree_hours(hourly.series(c), threshold_c, cdh, hdh);
    table[hourly.cells[c].cell_id] = CellNormals{mean_of(cdh), mean_of(hdh)};
  }
  return table;
}

TemperatureGrid shift_temperatures(const TemperatureGrid& grid, double delta_c) {
  if (!std::isfinite(delta_c)) throw InputError("temperature shift must be finite");
  TemperatureGrid out = grid;
  for (double& t : out.temps) t += delta_c;
  return out;
}

}  // namespace gridflex
