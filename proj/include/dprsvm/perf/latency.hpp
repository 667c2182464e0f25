#pragma once

#include <cstdint>

#include "dprsvm/cascade/cascade.hpp"

namespace dprsvm::perf {

/// Loop cost of one core. The core iterates over num_features + 1 trips.
///   sequential: trips * iteration_latency + fixed_overhead
///   pipelined:  pipeline_depth + (trips - 1) * initiation_interval + fixed_overhead
struct LatencyParams {
  bool pipelined = true;
  std::int64_t iteration_latency = 9;
  std::int64_t initiation_interval = 5;
  std::int64_t pipeline_depth = 13;
  std::int64_t fixed_overhead = 0;

  /// 278 cycles at 27 features.
  static LatencyParams sequential_defaults() { return {false, 9, 5, 13, 26}; }
  /// 148 cycles at 27 features.
  static LatencyParams pipelined_defaults() { return {true, 9, 5, 13, 0}; }

  void validate() const;  // throws StructuralError
};

std::uint64_t core_latency_cycles(std::int64_t num_features, const LatencyParams& p = LatencyParams::pipelined_defaults());

/// cycles / clock_hz in seconds.
double processing_time(std::uint64_t cycles, double clock_hz);

/// Sum of per-stage compute times for stages 1..exit_stage; reconfiguration excluded.
double cascade_processing_time(const cascade::CascadeSpec& spec, std::size_t exit_stage, double clock_hz,
                               const LatencyParams& p = LatencyParams::pipelined_defaults());

/// baseline_time / hw_time.
double speedup_vs_software(double hw_time, double baseline_time);

}  // namespace dprsvm::perf
