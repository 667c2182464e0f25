#include "dprsvm/fabric/resources.hpp"

#include <algorithm>

#include "dprsvm/errors.hpp"
#include "dprsvm/text.hpp"

namespace dprsvm::fabric {

bool ResourceFootprint::nonnegative() const {
  const auto a = as_array();
  return std::all_of(a.begin(), a.end(), [](auto v) { return v >= 0; });
}

bool ResourceFootprint::all_positive() const {
  const auto a = as_array();
  return std::all_of(a.begin(), a.end(), [](auto v) { return v > 0; });
}

std::optional<std::string_view> ResourceFootprint::first_exceeding(const ResourceFootprint& capacity) const {
  const auto a = as_array();
  const auto c = capacity.as_array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > c[i]) return kNames[i];
  }
  return std::nullopt;
}

ResourceFootprint operator+(const ResourceFootprint& a, const ResourceFootprint& b) {
  return {a.slices + b.slices, a.luts + b.luts, a.lut_ram + b.lut_ram, a.bram + b.bram, a.dsp + b.dsp};
}

ResourceFootprint operator-(const ResourceFootprint& a, const ResourceFootprint& b) {
  return {a.slices - b.slices, a.luts - b.luts, a.lut_ram - b.lut_ram, a.bram - b.bram, a.dsp - b.dsp};
}

ResourceFootprint operator*(std::int64_t k, const ResourceFootprint& a) {
  return {k * a.slices, k * a.luts, k * a.lut_ram, k * a.bram, k * a.dsp};
}

ResourceFootprint max(const ResourceFootprint& a, const ResourceFootprint& b) {
  return {std::max(a.slices, b.slices), std::max(a.luts, b.luts), std::max(a.lut_ram, b.lut_ram),
          std::max(a.bram, b.bram), std::max(a.dsp, b.dsp)};
}

ResourceFootprint parse_footprint(std::string_view s) {
  const auto tokens = text::split_tokens(s, ", \t");
  if (tokens.size() != 5) throw ParseError("footprint needs 5 counts, got '" + std::string(s) + "'");
  std::array<std::int64_t, 5> a{};
  for (std::size_t i = 0; i < 5; ++i) {
    auto v = text::parse_int(tokens[i]);
    if (!v) throw ParseError("bad footprint count '" + std::string(tokens[i]) + "'");
    a[i] = *v;
  }
  return ResourceFootprint::from_array(a);
}

std::string format_footprint(const ResourceFootprint& f, char sep) {
  std::string out;
  for (auto v : f.as_array()) {
    if (!out.empty()) out += sep;
    out += std::to_string(v);
  }
  return out;
}

Device Device::zynq_7020() { return {"xc7z020clg484-1", {106400, 53200, 17400, 140, 220}, 100.0e6}; }

std::string_view to_string(PortKind kind) { return kind == PortKind::jtag ? "jtag" : "pcap"; }

PortKind parse_port_kind(std::string_view s) {
  if (s == "jtag") return PortKind::jtag;
  if (s == "pcap") return PortKind::pcap;
  throw ParseError("unknown configuration port '" + std::string(s) + "' (jtag|pcap)");
}

}  // namespace dprsvm::fabric
