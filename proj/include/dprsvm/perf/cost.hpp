#pragma once

// Resource and power estimates for a system built from identical SVM cores.
// Default constants reproduce the Zynq implementation tables:
//   monolithic (1 core)   1046 / 858 / 70 / 1 / 5     1.54 W
//   cascade (2 cores)     1785 / 1478 / 72 / 2 / 10   1.56 W
//   DPR (1 RM loaded)     1050 / 867 / 70 / 1 / 5     1.55 W
// The per-core footprint is the cascade-minus-monolithic difference; the base
// is what remains of the monolithic system.

#include <map>
#include <string>

#include "dprsvm/fabric/resources.hpp"

namespace dprsvm::perf {

using fabric::ResourceFootprint;

struct SystemDescriptor {
  int n_cores = 1;
  bool dpr = false;
  bool timer = false;
  /// Optional model variant ("M", "N", ...) selecting a calibration correction.
  std::string variant;
};

struct ResourceModelParams {
  ResourceFootprint base{307, 238, 68, 0, 0};
  ResourceFootprint per_core{739, 620, 2, 1, 5};
  ResourceFootprint dpr_margin{4, 9, 0, 0, 0};
  ResourceFootprint timer{260, 590, 0, 0, 0};
  /// Per-variant deltas on top of the uniform model; keyed by SystemDescriptor::variant.
  std::map<std::string, ResourceFootprint> monolithic_corrections{{"N", {0, -2, 0, 0, 0}}};
  std::map<std::string, ResourceFootprint> rm_corrections{{"N", {0, -5, 0, 0, 0}}};

  void validate() const;
};

struct PowerModelParams {
  double base_watts = 1.52;
  double per_core_watts = 0.02;
  double dpr_overhead_watts = 0.01;
  double static_fraction = 0.10;
  double ps_fraction_of_dynamic = 0.95;

  void validate() const;
};

struct PowerEstimate {
  double total_watts;
  double static_watts;
  double ps_dynamic_watts;
  double pl_dynamic_watts;
};

/// base + n_cores * per_core (+ dpr_margin) (+ timer) (+ variant correction).
/// Throws CapacityError naming the first resource over `device.capacity`.
ResourceFootprint estimate_resources(const SystemDescriptor& system, const ResourceModelParams& params = {},
                                     const fabric::Device& device = fabric::Device::zynq_7020());

PowerEstimate estimate_power(const SystemDescriptor& system, const PowerModelParams& params = {});

/// Percentage as printed in the utilization tables: rounded half-up to two
/// decimals first, then to one decimal, with a trailing ".0" dropped ("1%", "4.6%").
std::string format_utilization(std::int64_t used, std::int64_t capacity);

}  // namespace dprsvm::perf
