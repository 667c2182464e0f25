#include "dprsvm/cli/commands.hpp"

#include <filesystem>

#include <fmt/format.h>

#include "dprsvm/cli/generate.hpp"
#include "dprsvm/perf/report.hpp"
#include "dprsvm/svm/decision.hpp"
#include "dprsvm/svm/io.hpp"
#include "dprsvm/text.hpp"

namespace dprsvm::cli {

namespace {

/// Re-throws any library error with the offending file prefixed, keeping its kind.
template <typename Fn>
auto with_file(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::string source_note(std::string_view bytes) {
  for (auto line : text::split_lines(bytes)) {
    line = text::trim(line);
    if (!line.starts_with('#')) break;
    auto tokens = text::split_tokens(line.substr(1));
    if (!tokens.empty() && tokens.front() == "dprsvm-gen") {
      std::string note;
      for (std::size_t i = 1; i < tokens.size(); ++i) note += (note.empty() ? "" : ",") + std::string(tokens[i]);
      return note.empty() ? "-" : note;
    }
  }
  return "-";
}

std::string system_label(const perf::SystemDescriptor& s) {
  if (s.dpr) return s.variant.empty() ? "RM configuration" : "RM-" + s.variant + " configuration";
  if (s.n_cores == 1) return s.variant.empty() ? "Model" : "Model " + s.variant;
  return fmt::format("Cascaded model ({} cores)", s.n_cores);
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return exit_parse;
    case ErrorKind::dimension: return exit_dimension;
    case ErrorKind::capacity: return exit_capacity;
    case ErrorKind::configuration: return exit_configuration;
    case ErrorKind::structure: return exit_structure;
  }
  return exit_usage;
}

std::string cmd_build(const BuildOptions& o) {
  const auto name = o.name.value_or(stem_of(o.model_path));
  const auto model = with_file(o.model_path, [&] { return svm::parse_model_file(text::read_file(o.model_path), name); });
  const auto weights = svm::accumulate_weights(model);
  text::write_file(o.out_path, svm::serialize_weight_artifact(weights));
  return fmt::format("built {}: {} features, {} support vectors, bias {}\n", o.out_path, weights.dimension(),
                     model.support_vectors().size(), text::format_real(weights.bias()));
}

std::string cmd_synth(const SynthOptions& o) {
  const auto cal = with_file(o.calibration_path.value_or("calibration"), [&] { return perf::load_calibration(o.calibration_path); });
  const double clock = o.clock_hz.value_or(cal.device.clock_hz);
  const auto footprint = perf::estimate_resources(o.system, cal.resources, cal.device);
  const auto power = perf::estimate_power(o.system, cal.power);
  const auto latency = cal.latency();
  const auto cycles = perf::core_latency_cycles(o.features, latency);
  const double stage_time = perf::processing_time(cycles, clock);
  const double worst = o.system.dpr ? stage_time : stage_time * o.system.n_cores;

  const std::vector<perf::SystemRow> rows{{system_label(o.system), footprint, power.total_watts, worst, clock}};
  std::string out;
  out += fmt::format("system      cores={} dpr={} timer={} device={}\n", o.system.n_cores, o.system.dpr ? "yes" : "no",
                     o.system.timer ? "yes" : "no", cal.device.name);
  out += perf::utilization_table(rows, cal.device);
  out += fmt::format("power       {:.2f} W (static {:.4f} W, PS dynamic {:.4f} W, PL dynamic {:.4f} W)\n",
                     power.total_watts, power.static_watts, power.ps_dynamic_watts, power.pl_dynamic_watts);
  out += fmt::format("latency     {} cycles per core ({}), {} features\n", cycles,
                     latency.pipelined ? "pipelined" : "sequential", o.features);
  out += fmt::format("time        {:.3f} us per stage at {:g} MHz, {:.3f} us worst case\n", stage_time * 1e6,
                     clock / 1e6, worst * 1e6);
  if (o.csv_path) text::write_file(*o.csv_path, perf::utilization_csv(rows, cal.device));
  return out;
}

RunReport execute_run(const RunConfig& c) {
  const auto cal = with_file(c.calibration_path.value_or("calibration"), [&] { return perf::load_calibration(c.calibration_path); });
  const double clock = c.clock_hz.value_or(cal.device.clock_hz);
  if (!(clock > 0)) throw StructuralError("clock must be positive");
  const auto latency = cal.latency();

  std::optional<cascade::CascadeSpec> spec;
  if (c.mode == RunMode::monolithic) {
    if (!c.model_path) throw StructuralError("monolithic mode needs --model");
    const auto w = with_file(*c.model_path, [&] { return svm::parse_weight_artifact(text::read_file(*c.model_path)); });
    spec.emplace(std::vector<cascade::CascadeStage>{{w.name(), w}});
  } else {
    if (!c.cascade_path) throw StructuralError(std::string(to_string(c.mode)) + " mode needs --cascade");
    spec.emplace(with_file(*c.cascade_path, [&] { return cascade::load_cascade(*c.cascade_path); }));
  }

  const auto instance_bytes = with_file(c.instances_path, [&] { return text::read_file(c.instances_path); });
  const auto instances = with_file(c.instances_path, [&] {
    return svm::parse_instance_file(instance_bytes, spec->dimension(),
                                    c.labeled ? svm::InstanceMode::labeled : svm::InstanceMode::unlabeled);
  });

  RunReport r;
  r.mode = c.mode;
  for (const auto& s : spec->stages()) r.stages.push_back(s.name);
  r.clock_hz = clock;
  r.precision = c.precision == svm::Precision::single_precision ? "single" : "double";
  r.timer = c.timer;
  r.source = source_note(instance_bytes);

  perf::SystemDescriptor system{c.mode == RunMode::cascade ? static_cast<int>(spec->size()) : 1, c.mode == RunMode::dpr,
                                c.timer, ""};
  r.footprint = perf::estimate_resources(system, cal.resources, cal.device);
  r.power_watts = perf::estimate_power(system, cal.power).total_watts;
  r.worst_case_time_s = perf::cascade_processing_time(*spec, spec->size(), clock, latency);

  std::vector<cascade::CascadeResult> results;
  if (c.mode == RunMode::dpr) {
    r.port = std::string(fabric::to_string(c.port));
    r.policy = std::string(fabric::to_string(c.policy));
    std::vector<fabric::ReconfigurableModule> rms;
    for (const auto& s : spec->stages()) rms.push_back({s.name, s.weights, cal.resources.per_core, latency});
    auto device = cal.device;
    device.clock_hz = clock;
    const auto static_base = cal.resources.base + (c.timer ? cal.resources.timer : fabric::ResourceFootprint{});
    const auto library = fabric::build_configuration_library(
        device, static_base, std::move(rms), {cal.resources.dpr_margin, cal.bitstream, "rp0"});
    const auto port = cal.port(c.port);
    fabric::DeviceState state(library, {latency, c.precision, c.timer});
    state = fabric::configure_full(std::move(state), library.full(spec->stage(1).name), port);

    std::vector<svm::FeatureVector> xs;
    xs.reserve(instances.size());
    for (const auto& inst : instances) xs.push_back(inst.features);
    auto run = fabric::dpr_cascade_run(std::move(state), library, *spec, xs, port, c.policy);
    results = std::move(run.results);
    r.config_time_s = run.state.cumulative_config_time();
    r.swaps = run.trace.swaps.size();
    if (c.trace_path) text::write_file(*c.trace_path, fabric::format_event_trace(run.state.events()));
  } else {
    results = cascade::cascade_classify_batch(*spec, std::span<const svm::Instance>(instances), {c.precision, c.threads});
  }

  for (std::size_t i = 0; i < results.size(); ++i) {
    InstanceResult x{results[i].label, results[i].exit_stage,
                     perf::cascade_processing_time(*spec, results[i].exit_stage, clock, latency), instances[i].label,
                     results[i].per_stage_distances};
    r.compute_time_s += x.time_s;
    r.results.push_back(std::move(x));
  }
  if (c.labeled) {
    std::vector<svm::Label> truth;
    for (const auto& inst : instances) truth.push_back(*inst.label);
    r.evaluation = cascade::tally(truth, results, spec->size());
  }
  return r;
}

std::string cmd_run(const RunConfig& config) {
  const auto report = execute_run(config);
  if (config.report_path) text::write_file(*config.report_path, serialize_run_report(report));
  if (config.csv_path) text::write_file(*config.csv_path, run_results_csv(report));
  return run_summary(report);
}

std::vector<perf::SystemRow> report_rows(const std::vector<std::string>& report_paths) {
  std::vector<perf::SystemRow> rows;
  for (const auto& path : report_paths) {
    const auto r = with_file(path, [&] { return parse_run_report(text::read_file(path)); });
    rows.push_back({stem_of(path), r.footprint, r.power_watts, r.worst_case_time_s, r.clock_hz});
  }
  return rows;
}

std::string cmd_report(const ReportOptions& o) {
  if (o.report_paths.empty()) throw StructuralError("report needs at least one run report");
  const auto rows = report_rows(o.report_paths);
  if (o.csv_path) text::write_file(*o.csv_path, perf::comparison_csv(rows));
  return perf::comparison_table(rows);
}

std::string cmd_gen_model(const GenModelOptions& o) {
  const auto model = generate_model({o.name, o.dimension, o.support_vectors, o.seed, 0.1, o.positive_rate});
  text::write_file(o.out_path, svm::serialize_model_file(model));
  return fmt::format("wrote {}: {} features, {} support vectors, seed {}\n", o.out_path, o.dimension,
                     o.support_vectors, o.seed);
}

std::string cmd_gen_instances(const GenInstancesOptions& o) {
  InstanceGenOptions g;
  g.dimension = o.dimension;
  g.count = o.count;
  g.seed = o.seed;
  g.labeled = o.labeled;
  g.label_noise = o.label_noise;
  const auto instances = generate_instances(g);
  std::string out = fmt::format("# dprsvm-gen seed={} count={} dim={} labeled={}\n", o.seed, o.count, o.dimension,
                                o.labeled ? 1 : 0);
  out += svm::serialize_instances(instances, o.labeled ? svm::InstanceMode::labeled : svm::InstanceMode::unlabeled);
  text::write_file(o.out_path, out);
  return fmt::format("wrote {}: {} instances of {} features, seed {}\n", o.out_path, o.count, o.dimension, o.seed);
}

}  // namespace dprsvm::cli
