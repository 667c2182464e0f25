#include "dprsvm/perf/cost.hpp"

#include <cmath>

#include "dprsvm/errors.hpp"

namespace dprsvm::perf {

namespace {

void validate_descriptor(const SystemDescriptor& s) {
  if (s.n_cores < 1) throw StructuralError("system needs at least one core");
  if (s.dpr && s.n_cores != 1) throw StructuralError("a DPR system hosts exactly one loaded core");
}

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

}  // namespace

void ResourceModelParams::validate() const {
  if (!base.nonnegative() || !per_core.nonnegative() || !dpr_margin.nonnegative() || !timer.nonnegative()) {
    throw StructuralError("resource model footprints must be nonnegative");
  }
}

void PowerModelParams::validate() const {
  if (base_watts < 0 || per_core_watts < 0 || dpr_overhead_watts < 0) throw StructuralError("watts must be >= 0");
  if (!in_open_unit(static_fraction) || !in_open_unit(ps_fraction_of_dynamic)) {
    throw StructuralError("power fractions must lie in (0,1)");
  }
}

ResourceFootprint estimate_resources(const SystemDescriptor& system, const ResourceModelParams& params,
                                     const fabric::Device& device) {
  validate_descriptor(system);
  params.validate();
  auto total = params.base + static_cast<std::int64_t>(system.n_cores) * params.per_core;
  if (system.dpr) total = total + params.dpr_margin;
  if (system.timer) total = total + params.timer;
  if (!system.variant.empty() && system.n_cores == 1) {
    const auto& table = system.dpr ? params.rm_corrections : params.monolithic_corrections;
    if (auto it = table.find(system.variant); it != table.end()) total = total + it->second;
  }
  if (!total.nonnegative()) throw StructuralError("resource estimate went negative");
  if (auto over = total.first_exceeding(device.capacity)) {
    throw CapacityError("system exceeds " + device.name + " capacity: " + std::string(*over));
  }
  return total;
}

PowerEstimate estimate_power(const SystemDescriptor& system, const PowerModelParams& params) {
  validate_descriptor(system);
  params.validate();
  PowerEstimate e{};
  e.total_watts = params.base_watts + system.n_cores * params.per_core_watts;
  if (system.dpr) e.total_watts += params.dpr_overhead_watts;
  e.static_watts = params.static_fraction * e.total_watts;
  const double dynamic = e.total_watts - e.static_watts;
  e.ps_dynamic_watts = params.ps_fraction_of_dynamic * dynamic;
  e.pl_dynamic_watts = dynamic - e.ps_dynamic_watts;
  return e;
}

std::string format_utilization(std::int64_t used, std::int64_t capacity) {
  if (capacity <= 0) throw StructuralError("capacity must be positive");
  if (used < 0) throw StructuralError("usage must be nonnegative");
  // Integer half-up rounding avoids binary-fraction surprises at the .x5 boundaries.
  const std::int64_t hundredths = (2 * used * 10000 + capacity) / (2 * capacity);
  const std::int64_t tenths = (hundredths + 5) / 10;
  std::string out = std::to_string(tenths / 10);
  if (tenths % 10 != 0) out += "." + std::to_string(tenths % 10);
  return out + "%";
}

}  // namespace dprsvm::perf
