#include "dprsvm/perf/report.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "dprsvm/perf/cost.hpp"

namespace dprsvm::perf {

namespace {

constexpr std::array<std::string_view, 5> kHeaders{"Slices", "LUT", "LUT-RAM", "BRAM", "DSP"};

std::string watts(double w) { return fmt::format("{:.2f}", w); }
std::string micros(double s) { return fmt::format("{:.3f}", s * 1e6); }

}  // namespace

std::string group_thousands(std::int64_t v) {
  std::string digits = std::to_string(v < 0 ? -v : v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return v < 0 ? "-" + out : out;
}

std::string align_columns(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string utilization_table(std::span<const SystemRow> rows, const fabric::Device& device) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"System"};
  const auto cap = device.capacity.as_array();
  for (std::size_t i = 0; i < kHeaders.size(); ++i) {
    header.push_back(fmt::format("{} ({})", kHeaders[i], group_thousands(cap[i])));
  }
  header.emplace_back("P (W)");
  cells.push_back(header);
  for (const auto& r : rows) {
    std::vector<std::string> line{r.label};
    const auto used = r.footprint.as_array();
    for (std::size_t i = 0; i < used.size(); ++i) {
      line.push_back(fmt::format("{} ({})", used[i], format_utilization(used[i], cap[i])));
    }
    line.push_back(watts(r.power_watts));
    cells.push_back(std::move(line));
  }
  return align_columns(cells);
}

std::string utilization_csv(std::span<const SystemRow> rows, const fabric::Device& device) {
  std::string out = "system,slices,luts,lut_ram,bram,dsp,slices_pct,luts_pct,lut_ram_pct,bram_pct,dsp_pct,power_w\n";
  const auto cap = device.capacity.as_array();
  for (const auto& r : rows) {
    const auto used = r.footprint.as_array();
    out += r.label;
    for (auto v : used) out += "," + std::to_string(v);
    for (std::size_t i = 0; i < used.size(); ++i) {
      auto pct = format_utilization(used[i], cap[i]);
      pct.pop_back();
      out += "," + pct;
    }
    out += "," + watts(r.power_watts) + "\n";
  }
  return out;
}

std::string comparison_table(std::span<const SystemRow> rows) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"Results"};
  for (const auto& r : rows) header.push_back(r.label);
  cells.push_back(header);
  const std::array<std::string_view, 5> names{"Slices", "LUTs", "Memory LUT", "BRAM", "DSP48"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<std::string> line{std::string(names[i])};
    for (const auto& r : rows) line.push_back(std::to_string(r.footprint.as_array()[i]));
    cells.push_back(std::move(line));
  }
  std::vector<std::string> power{"Power (W)"}, freq{"Frequency (MHz)"}, time{"Processing time (us)"};
  for (const auto& r : rows) {
    power.push_back(watts(r.power_watts));
    freq.push_back(r.clock_hz ? fmt::format("{:g}", *r.clock_hz / 1e6) : "-");
    time.push_back(r.processing_time ? micros(*r.processing_time) : "-");
  }
  cells.push_back(power);
  cells.push_back(freq);
  cells.push_back(time);
  return align_columns(cells);
}

std::string comparison_csv(std::span<const SystemRow> rows) {
  std::string out = "system,slices,luts,lut_ram,bram,dsp,power_w,clock_mhz,processing_time_us\n";
  for (const auto& r : rows) {
    out += r.label;
    for (auto v : r.footprint.as_array()) out += "," + std::to_string(v);
    out += "," + watts(r.power_watts);
    out += "," + (r.clock_hz ? fmt::format("{:g}", *r.clock_hz / 1e6) : std::string());
    out += "," + (r.processing_time ? micros(*r.processing_time) : std::string());
    out += "\n";
  }
  return out;
}

}  // namespace dprsvm::perf
