#pragma once

// Simulated device: a static wrapper, one reconfigurable partition hosting an
// SVM core, a configuration event log and a simulated wall clock.
//
// Operations take a state by value and return the successor state.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dprsvm/fabric/bitstream.hpp"
#include "dprsvm/fabric/core.hpp"

namespace dprsvm::fabric {

enum class EventKind { configure_full, configure_partial, run };

std::string_view to_string(EventKind kind);

struct Event {
  double time;      // seconds at event start
  EventKind kind;
  double duration;  // seconds
  std::string detail;
};

struct CoreRunResult;

class DeviceState {
 public:
  explicit DeviceState(const ConfigurationLibrary& library, CoreOptions core = {});

  [[nodiscard]] const Device& device() const noexcept { return device_; }
  [[nodiscard]] const ReconfigurablePartition& partition() const noexcept { return partition_; }
  [[nodiscard]] ResourceFootprint footprint() const { return static_base_ + partition_.allocated; }
  [[nodiscard]] bool static_loaded() const noexcept { return static_loaded_; }
  [[nodiscard]] const std::optional<std::string>& rp_contents() const noexcept { return rp_contents_; }
  [[nodiscard]] const std::vector<Event>& events() const noexcept { return events_; }
  [[nodiscard]] double cumulative_config_time() const noexcept { return config_time_; }
  [[nodiscard]] double now() const noexcept { return now_; }
  [[nodiscard]] std::uint64_t register_base() const noexcept { return register_base_; }
  [[nodiscard]] const SvmCore& core() const noexcept { return core_; }
  [[nodiscard]] SvmCore& core() noexcept { return core_; }
  /// Free-running cycle counter; nullopt when the system has no timer.
  [[nodiscard]] std::optional<std::uint64_t> timer_cycles() const;

  friend DeviceState configure_full(DeviceState state, const Bitstream& bs, const ConfigPort& port);
  friend DeviceState reconfigure_partial(DeviceState state, const Bitstream& bs, const ConfigPort& port);
  friend CoreRunResult core_run(DeviceState state, const svm::FeatureVector& x);
  friend CoreRunResult core_start(DeviceState state);

 private:
  void log_config(EventKind kind, const Bitstream& bs, const ConfigPort& port);
  void log_run(const svm::DecisionOutcome& outcome, std::uint64_t cycles);

  Device device_;
  ResourceFootprint static_base_;
  ReconfigurablePartition partition_;
  bool static_loaded_ = false;
  std::optional<std::string> rp_contents_;
  std::vector<Event> events_;
  double config_time_ = 0.0;
  double now_ = 0.0;
  std::uint64_t register_base_ = 0x43C00000;
  SvmCore core_;
};

struct CoreRunResult {
  DeviceState state;
  svm::DecisionOutcome outcome;
  std::uint64_t cycles;
};

/// size_bits / bits_per_second.
double config_time(const Bitstream& bs, const ConfigPort& port);

/// Programs the whole device. Errors (ConfigurationError): partial bitstream,
/// target is not this device, module not admissible for the partition.
DeviceState configure_full(DeviceState state, const Bitstream& bs, const ConfigPort& port);

/// Swaps the partition contents, leaving the static region alone. Errors
/// (ConfigurationError): device not yet fully configured, full bitstream,
/// wrong partition, module not admissible.
DeviceState reconfigure_partial(DeviceState state, const Bitstream& bs, const ConfigPort& port);

/// One host transaction on the loaded core. Errors: nothing loaded
/// (ConfigurationError), dimension mismatch (DimensionError).
CoreRunResult core_run(DeviceState state, const svm::FeatureVector& x);

/// Sets START on whatever is currently in the input window.
CoreRunResult core_start(DeviceState state);

/// One line per event: `<t_seconds> <event-kind> <detail>`.
std::string format_event_trace(const std::vector<Event>& events);

}  // namespace dprsvm::fabric
