#pragma once

// Cascade execution on hardware: either every stage has its own core (static),
// or one partition is swapped between stage modules at runtime (DPR).

#include <span>
#include <string>
#include <vector>

#include "dprsvm/cascade/cascade.hpp"
#include "dprsvm/fabric/device.hpp"

namespace dprsvm::fabric {

/// lazy: swap only when the next stage needs a different module.
/// eager_restore: after each instance, swap back to the stage-1 module.
enum class SwapPolicy { lazy, eager_restore };

std::string_view to_string(SwapPolicy p);
SwapPolicy parse_swap_policy(std::string_view s);

struct Swap {
  std::size_t instance;
  std::string from;
  std::string to;
  double duration;
};

struct DprTrace {
  std::vector<Swap> swaps;
  std::vector<std::size_t> stage_visits;  // 1-based stage index of every core run, in order
  double compute_time = 0.0;
  double config_time = 0.0;
};

struct DprRunResult {
  DeviceState state;
  std::vector<cascade::CascadeResult> results;
  DprTrace trace;
};

/// Stage names must name library modules whose payload equals the stage weights
/// (ConfigurationError otherwise). The device must already hold its static
/// wrapper; stage-1 is normally loaded.
DprRunResult dpr_cascade_run(DeviceState state, const ConfigurationLibrary& library, const cascade::CascadeSpec& spec,
                             std::span<const svm::FeatureVector> instances, const ConfigPort& port,
                             SwapPolicy policy = SwapPolicy::lazy);

/// Number of module changes needed to follow `visits` starting from `initial`.
std::size_t count_transitions(std::size_t initial, std::span<const std::size_t> visits);

/// n permanently loaded cores, one per stage.
class StaticCascadeSystem {
 public:
  StaticCascadeSystem(const cascade::CascadeSpec& spec, double clock_hz, CoreOptions core = {});

  struct Run {
    cascade::CascadeResult result;
    std::uint64_t cycles;
  };

  Run classify(const svm::FeatureVector& x);
  [[nodiscard]] std::size_t size() const noexcept { return cores_.size(); }
  [[nodiscard]] double elapsed() const noexcept { return elapsed_; }

 private:
  std::vector<SvmCore> cores_;
  double clock_hz_;
  double elapsed_ = 0.0;
};

}  // namespace dprsvm::fabric
