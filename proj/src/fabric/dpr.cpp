#include "dprsvm/fabric/dpr.hpp"

#include "dprsvm/errors.hpp"
#include "dprsvm/perf/latency.hpp"

namespace dprsvm::fabric {

std::string_view to_string(SwapPolicy p) { return p == SwapPolicy::lazy ? "lazy" : "eager"; }

SwapPolicy parse_swap_policy(std::string_view s) {
  if (s == "lazy") return SwapPolicy::lazy;
  if (s == "eager") return SwapPolicy::eager_restore;
  throw ParseError("unknown swap policy '" + std::string(s) + "' (lazy|eager)");
}

std::size_t count_transitions(std::size_t initial, std::span<const std::size_t> visits) {
  std::size_t n = 0;
  std::size_t current = initial;
  for (auto v : visits) {
    if (v != current) ++n;
    current = v;
  }
  return n;
}

namespace {

struct Swapper {
  DeviceState& state;
  const ConfigurationLibrary& library;
  const ConfigPort& port;
  DprTrace& trace;

  void ensure(const std::string& rm, std::size_t instance) {
    if (state.rp_contents() == rm) return;
    const std::string from = state.rp_contents().value_or("");
    const auto& bs = library.partial(rm);
    state = reconfigure_partial(std::move(state), bs, port);
    const double d = state.events().back().duration;
    trace.swaps.push_back({instance, from, rm, d});
    trace.config_time += d;
  }
};

}  // namespace

DprRunResult dpr_cascade_run(DeviceState state, const ConfigurationLibrary& library, const cascade::CascadeSpec& spec,
                             std::span<const svm::FeatureVector> instances, const ConfigPort& port, SwapPolicy policy) {
  for (const auto& stage : spec.stages()) {
    const auto& rm = library.module(stage.name);
    if (!(rm.weights == stage.weights)) {
      throw ConfigurationError("module '" + stage.name + "' in the library does not match the cascade stage weights");
    }
  }
  if (!state.static_loaded()) throw ConfigurationError("device must be fully configured before a DPR cascade run");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (instances[i].dimension() != spec.dimension()) {
      throw DimensionError("instance " + std::to_string(i) + " has dimension " +
                           std::to_string(instances[i].dimension()) + ", cascade expects " +
                           std::to_string(spec.dimension()));
    }
  }

  DprTrace trace;
  std::vector<cascade::CascadeResult> results;
  results.reserve(instances.size());
  Swapper swapper{state, library, port, trace};

  for (std::size_t i = 0; i < instances.size(); ++i) {
    cascade::CascadeResult r{svm::Label::negative, 0, {}};
    for (std::size_t k = 1; k <= spec.size(); ++k) {
      swapper.ensure(spec.stage(k).name, i);
      auto run = core_run(std::move(state), instances[i]);
      state = std::move(run.state);
      trace.stage_visits.push_back(k);
      trace.compute_time += state.events().back().duration;
      r.per_stage_distances.push_back(run.outcome.distance);
      r.exit_stage = k;
      if (run.outcome.label == svm::Label::positive) {
        r.label = svm::Label::positive;
        break;
      }
    }
    results.push_back(std::move(r));
    if (policy == SwapPolicy::eager_restore) swapper.ensure(spec.stage(1).name, i);
  }
  return {std::move(state), std::move(results), std::move(trace)};
}

StaticCascadeSystem::StaticCascadeSystem(const cascade::CascadeSpec& spec, double clock_hz, CoreOptions core)
    : clock_hz_(clock_hz) {
  if (!(clock_hz > 0)) throw StructuralError("clock frequency must be positive");
  for (const auto& stage : spec.stages()) {
    cores_.emplace_back(core);
    cores_.back().load(stage.weights);
  }
}

StaticCascadeSystem::Run StaticCascadeSystem::classify(const svm::FeatureVector& x) {
  Run run{{svm::Label::negative, 0, {}}, 0};
  for (std::size_t k = 0; k < cores_.size(); ++k) {
    const auto outcome = host_classify(cores_[k], x);
    run.cycles += cores_[k].last_cycles();
    run.result.per_stage_distances.push_back(outcome.distance);
    run.result.exit_stage = k + 1;
    if (outcome.label == svm::Label::positive) {
      run.result.label = svm::Label::positive;
      break;
    }
  }
  elapsed_ += perf::processing_time(run.cycles, clock_hz_);
  return run;
}

}  // namespace dprsvm::fabric
