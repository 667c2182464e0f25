#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dprsvm/fabric/resources.hpp"

namespace dprsvm::perf {

struct SystemRow {
  std::string label;
  fabric::ResourceFootprint footprint;
  double power_watts = 0.0;
  std::optional<double> processing_time;  // seconds
  std::optional<double> clock_hz;
};

/// Aligned table: one row per system, each resource as "count (pct%)", power in W.
std::string utilization_table(std::span<const SystemRow> rows, const fabric::Device& device);
std::string utilization_csv(std::span<const SystemRow> rows, const fabric::Device& device);

/// Transposed comparison: one column per system, one row per quantity.
std::string comparison_table(std::span<const SystemRow> rows);
std::string comparison_csv(std::span<const SystemRow> rows);

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
std::string align_columns(const std::vector<std::vector<std::string>>& cells);

/// "1,234,567" style grouping for table headers.
std::string group_thousands(std::int64_t v);

}  // namespace dprsvm::perf
