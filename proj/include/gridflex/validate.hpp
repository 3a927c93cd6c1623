#pragma once
// Input checks that collect every problem instead of stopping at the first.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gridflex {

struct ValidationIssue {
  std::string file;
  std::size_t line = 0;  // 0 when the issue is not tied to one row
  std::string rule;
  std::string message;
};

struct ValidationInputs {
  std::optional<std::filesystem::path> grid;
  std::optional<std::filesystem::path> regions;
  std::optional<std::filesystem::path> load;
  std::optional<std::filesystem::path> normals;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Schema conformity, timestamp continuity, positivity and cross-file
// consistency (region cells present in the grid, grid covering the load).
ValidationReport validate_inputs(const ValidationInputs& inputs);

void write_validation_json(const ValidationReport& report, std::ostream& out);

}  // namespace gridflex
