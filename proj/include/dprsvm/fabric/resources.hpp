#pragma once

// Fabric-level value types shared by the simulator and the cost models.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dprsvm::fabric {

/// Resource counts. Stored signed so per-variant calibration deltas can use the
/// same type; footprints of real systems are checked nonnegative.
struct ResourceFootprint {
  std::int64_t slices = 0;
  std::int64_t luts = 0;
  std::int64_t lut_ram = 0;
  std::int64_t bram = 0;
  std::int64_t dsp = 0;

  static constexpr std::array<std::string_view, 5> kNames{"slices", "luts", "lut_ram", "bram", "dsp"};

  [[nodiscard]] std::array<std::int64_t, 5> as_array() const { return {slices, luts, lut_ram, bram, dsp}; }
  static ResourceFootprint from_array(const std::array<std::int64_t, 5>& a) { return {a[0], a[1], a[2], a[3], a[4]}; }

  [[nodiscard]] bool nonnegative() const;
  [[nodiscard]] bool all_positive() const;
  [[nodiscard]] bool is_zero() const { return *this == ResourceFootprint{}; }
  /// First resource (by kNames order) exceeding `capacity`, if any.
  [[nodiscard]] std::optional<std::string_view> first_exceeding(const ResourceFootprint& capacity) const;

  friend bool operator==(const ResourceFootprint&, const ResourceFootprint&) = default;
  friend ResourceFootprint operator+(const ResourceFootprint& a, const ResourceFootprint& b);
  friend ResourceFootprint operator-(const ResourceFootprint& a, const ResourceFootprint& b);
  friend ResourceFootprint operator*(std::int64_t k, const ResourceFootprint& a);
};

ResourceFootprint max(const ResourceFootprint& a, const ResourceFootprint& b);

/// "slices,luts,lut_ram,bram,dsp" or the same separated by spaces.
ResourceFootprint parse_footprint(std::string_view text);
std::string format_footprint(const ResourceFootprint& f, char sep = ' ');

struct Device {
  std::string name;
  ResourceFootprint capacity;
  double clock_hz;

  /// XC7Z020CLG484-1 with the capacities used by the utilization tables, at 100 MHz.
  static Device zynq_7020();
};

/// Bitstream size in bits = bits_per_slice * slices of the programmed region.
struct BitstreamSizeModel {
  std::int64_t full_bits_per_slice = 400;
  std::int64_t partial_bits_per_slice = 400;
};

enum class PortKind { jtag, pcap };

std::string_view to_string(PortKind kind);
PortKind parse_port_kind(std::string_view s);

struct ConfigPort {
  PortKind kind;
  double bits_per_second;

  static ConfigPort jtag(double bps = 33.0e6) { return {PortKind::jtag, bps}; }
  static ConfigPort pcap(double bps = 3.2e9) { return {PortKind::pcap, bps}; }
};

}  // namespace dprsvm::fabric
