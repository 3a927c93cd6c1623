#pragma once
// Table-shaped summaries over pooling levels, seasons, α values and climate
// scenarios, with CSV, JSON and plain-text emitters.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gridflex/metrics.hpp"

namespace gridflex {

struct ReportOptions {
  std::vector<double> alphas{0.0, 0.25, 0.5, 1.0};
  std::vector<Season> seasons{Season::All, Season::Winter, Season::Summer};
  std::vector<PoolLevel> levels{PoolLevel::Region, PoolLevel::Interconnect, PoolLevel::Nation};
  std::vector<double> percentile_alphas{0.0, 0.5, 1.0};
  int reference_offset_hours = kDefaultPoolOffsetHours;
  bool include_alpha_sweep = true;
  std::vector<double> sweep_alphas = default_alpha_grid();
};

inline constexpr const char* kPresentScenario = "present";

enum class Basis { Daily, Overall };
std::string to_string(Basis basis);

struct TableCell {
  std::string scenario;
  Basis basis = Basis::Daily;
  PoolLevel level = PoolLevel::Region;
  Season season = Season::All;
  double alpha = 0.0;
  std::size_t pools = 0;
  std::size_t days = 0;
  CombinedSummary summary;
};

struct PercentileRow {
  std::string scenario;
  PoolLevel level = PoolLevel::Region;
  double alpha = 0.0;
  PercentileTable table;
};

struct SweepRow {
  std::string series;  // region id, or "demand_weighted"
  double alpha = 0.0;
  double daily_sd_reduction_pct = 0.0;
  double overall_sd_reduction_pct = 0.0;
};

struct FlattenReport {
  ReportOptions options;
  std::vector<std::string> scenarios;
  std::vector<TableCell> cells;
  std::vector<PercentileRow> percentiles;
  std::vector<SweepRow> sweep;
  double temperature_sensitive_share = 0.0;  // demand-weighted, at the input α
  std::size_t skipped_days = 0;

  const TableCell& cell(const std::string& scenario, Basis basis, PoolLevel level, Season season, double alpha) const;
};

struct ScenarioInput {
  std::string name;
  std::vector<ShiftableSeries> regions;  // built with alpha > 0
};

// The first scenario is the historic baseline; later scenarios' percentile
// rows are normalized by its observed load.
FlattenReport build_report(std::span<const ScenarioInput> scenarios, const ReportOptions& options = {});

void write_report_json(const FlattenReport& report, std::ostream& out);
// Long form: scenario,basis,level,season,alpha,weighting,metric,value
void write_report_csv(const FlattenReport& report, std::ostream& out);
// scenario,level,alpha,family,stat,normalization,value
void write_percentiles_csv(const FlattenReport& report, std::ostream& out);
void write_sweep_csv(const FlattenReport& report, std::ostream& out);
// Plain-text grid: rows are pooling level within season, columns metric × α.
void write_table_text(const FlattenReport& report, const std::string& scenario, Basis basis, std::ostream& out);

}  // namespace gridflex
