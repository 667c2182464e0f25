#include "dprsvm/fabric/device.hpp"

#include <cmath>

#include <fmt/format.h>

#include "dprsvm/errors.hpp"
#include "dprsvm/perf/latency.hpp"

namespace dprsvm::fabric {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::configure_full: return "config-full";
    case EventKind::configure_partial: return "config-partial";
    case EventKind::run: return "run";
  }
  return "?";
}

DeviceState::DeviceState(const ConfigurationLibrary& library, CoreOptions core)
    : device_(library.device), static_base_(library.static_base), partition_(library.partition), core_(core) {
  if (!device_.capacity.all_positive()) throw StructuralError("device capacity must be positive");
  if (!(device_.clock_hz > 0)) throw StructuralError("device clock must be positive");
}

std::optional<std::uint64_t> DeviceState::timer_cycles() const {
  if (!core_.options().timer) return std::nullopt;
  return static_cast<std::uint64_t>(std::llround(now_ * device_.clock_hz));
}

void DeviceState::log_config(EventKind kind, const Bitstream& bs, const ConfigPort& port) {
  const double duration = config_time(bs, port);
  events_.push_back({now_, kind, duration,
                     fmt::format("rm={} bits={} port={} duration={}", bs.rm_name, bs.size_bits, to_string(port.kind),
                                 fmt::format("{:.9f}", duration))});
  config_time_ += duration;
  now_ += duration;
  if (auto t = timer_cycles()) core_.set_timer(*t);
}

void DeviceState::log_run(const svm::DecisionOutcome& outcome, std::uint64_t cycles) {
  const double duration = perf::processing_time(cycles, device_.clock_hz);
  events_.push_back({now_, EventKind::run, duration,
                     fmt::format("rm={} label={:+d} cycles={}", *rp_contents_, svm::to_int(outcome.label), cycles)});
  now_ += duration;
  if (auto t = timer_cycles()) core_.set_timer(*t);
}

double config_time(const Bitstream& bs, const ConfigPort& port) {
  if (!(port.bits_per_second > 0)) throw StructuralError("port rate must be positive");
  return static_cast<double>(bs.size_bits) / port.bits_per_second;
}

DeviceState configure_full(DeviceState state, const Bitstream& bs, const ConfigPort& port) {
  if (bs.kind != BitstreamKind::full) {
    throw ConfigurationError("configure_full needs a full bitstream, got partial for '" + bs.rm_name + "'");
  }
  if (bs.target != state.device_.name) {
    throw ConfigurationError("full bitstream targets '" + bs.target + "', device is '" + state.device_.name + "'");
  }
  if (!state.partition_.admits(bs.rm_name)) {
    throw ConfigurationError("module '" + bs.rm_name + "' is not admissible for partition '" + state.partition_.id + "'");
  }
  state.core_.load(bs.payload);
  state.static_loaded_ = true;
  state.rp_contents_ = bs.rm_name;
  state.log_config(EventKind::configure_full, bs, port);
  return state;
}

DeviceState reconfigure_partial(DeviceState state, const Bitstream& bs, const ConfigPort& port) {
  if (bs.kind != BitstreamKind::partial) {
    throw ConfigurationError("reconfigure_partial needs a partial bitstream, got full for '" + bs.rm_name + "'");
  }
  if (!state.static_loaded_) {
    throw ConfigurationError("device must be configured with a full bitstream before partial reconfiguration");
  }
  if (bs.target != state.partition_.id) {
    throw ConfigurationError("partial bitstream targets '" + bs.target + "', partition is '" + state.partition_.id + "'");
  }
  if (!state.partition_.admits(bs.rm_name)) {
    throw ConfigurationError("module '" + bs.rm_name + "' is not admissible for partition '" + state.partition_.id + "'");
  }
  state.core_.load(bs.payload);
  state.rp_contents_ = bs.rm_name;
  state.log_config(EventKind::configure_partial, bs, port);
  return state;
}

CoreRunResult core_run(DeviceState state, const svm::FeatureVector& x) {
  if (!state.static_loaded_ || !state.rp_contents_) throw ConfigurationError("no module loaded in the partition");
  const auto outcome = host_classify(state.core_, x);
  const auto cycles = state.core_.last_cycles();
  state.log_run(outcome, cycles);
  return {std::move(state), outcome, cycles};
}

CoreRunResult core_start(DeviceState state) {
  if (!state.static_loaded_ || !state.rp_contents_) throw ConfigurationError("no module loaded in the partition");
  state.core_.write(reg::ctrl, reg::ctrl_start);
  const auto outcome = read_outcome(state.core_);
  const auto cycles = state.core_.last_cycles();
  state.log_run(outcome, cycles);
  return {std::move(state), outcome, cycles};
}

std::string format_event_trace(const std::vector<Event>& events) {
  std::string out;
  for (const auto& e : events) out += fmt::format("{:.9f} {} {}\n", e.time, to_string(e.kind), e.detail);
  return out;
}

}  // namespace dprsvm::fabric
