#include "dprsvm/perf/latency.hpp"

#include <string>

#include "dprsvm/errors.hpp"

namespace dprsvm::perf {

void LatencyParams::validate() const {
  if (iteration_latency < 0 || initiation_interval < 0 || pipeline_depth < 0 || fixed_overhead < 0) {
    throw StructuralError("latency parameters must be nonnegative");
  }
  if (pipelined && initiation_interval < 1) throw StructuralError("initiation interval must be >= 1 when pipelined");
}

std::uint64_t core_latency_cycles(std::int64_t num_features, const LatencyParams& p) {
  if (num_features < 1) throw DimensionError("core latency needs at least one feature");
  p.validate();
  const auto trips = static_cast<std::uint64_t>(num_features) + 1;
  if (p.pipelined) {
    return static_cast<std::uint64_t>(p.pipeline_depth) + (trips - 1) * static_cast<std::uint64_t>(p.initiation_interval) +
           static_cast<std::uint64_t>(p.fixed_overhead);
  }
  return trips * static_cast<std::uint64_t>(p.iteration_latency) + static_cast<std::uint64_t>(p.fixed_overhead);
}

double processing_time(std::uint64_t cycles, double clock_hz) {
  if (!(clock_hz > 0.0)) throw StructuralError("clock frequency must be positive");
  return static_cast<double>(cycles) / clock_hz;
}

double cascade_processing_time(const cascade::CascadeSpec& spec, std::size_t exit_stage, double clock_hz,
                               const LatencyParams& p) {
  if (exit_stage < 1 || exit_stage > spec.size()) {
    throw StructuralError("exit stage " + std::to_string(exit_stage) + " outside 1.." + std::to_string(spec.size()));
  }
  double total = 0.0;
  for (std::size_t k = 1; k <= exit_stage; ++k) {
    total += processing_time(core_latency_cycles(spec.stage(k).weights.dimension(), p), clock_hz);
  }
  return total;
}

double speedup_vs_software(double hw_time, double baseline_time) {
  if (!(hw_time > 0.0) || !(baseline_time > 0.0)) throw StructuralError("speedup needs positive times");
  return baseline_time / hw_time;
}

}  // namespace dprsvm::perf
