#pragma once

// Every tunable constant of the simulator in one place, overridable from a
// `key = value` text file:
//
//   device.name, device.capacity (5 counts), device.clock_hz
//   latency.mode                          pipelined | sequential
//   latency.<sequential|pipelined>.<iteration_latency|initiation_interval|pipeline_depth|fixed_overhead>
//   resources.<base|per_core|dpr_margin|timer>   5 counts
//   resources.correction.<monolithic|rm>.<variant>  5 signed counts
//   power.<base_watts|per_core_watts|dpr_overhead_watts|static_fraction|ps_fraction_of_dynamic>
//   bitstream.<full|partial>_bits_per_slice
//   port.<jtag|pcap>_bps

#include <optional>
#include <string>
#include <string_view>

#include "dprsvm/fabric/resources.hpp"
#include "dprsvm/perf/cost.hpp"
#include "dprsvm/perf/latency.hpp"

namespace dprsvm::perf {

inline constexpr const char* kCalibrationEnv = "DPRSVM_CALIBRATION";

struct Calibration {
  fabric::Device device = fabric::Device::zynq_7020();
  bool use_pipelined = true;
  LatencyParams sequential = LatencyParams::sequential_defaults();
  LatencyParams pipelined = LatencyParams::pipelined_defaults();
  ResourceModelParams resources;
  PowerModelParams power;
  fabric::BitstreamSizeModel bitstream;
  double jtag_bps = 33.0e6;
  double pcap_bps = 3.2e9;

  [[nodiscard]] LatencyParams latency() const { return use_pipelined ? pipelined : sequential; }
  [[nodiscard]] fabric::ConfigPort port(fabric::PortKind kind) const;
};

/// Applies the overrides in `bytes` on top of `base`. Unknown keys are a ParseError.
Calibration parse_calibration(std::string_view bytes, Calibration base = {});

/// Defaults, overridden by `path` if given, else by the file named in $DPRSVM_CALIBRATION.
Calibration load_calibration(const std::optional<std::string>& path);

/// Full key = value dump; parse_calibration of it reproduces the same constants.
std::string serialize_calibration(const Calibration& c);

}  // namespace dprsvm::perf
