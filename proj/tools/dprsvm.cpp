// dprsvm: build weight artifacts, estimate systems, run cascades, compare runs.

#include <iostream>

#include <CLI11.hpp>

#include "dprsvm/cli/commands.hpp"

namespace {

using namespace dprsvm;

void add_system_flags(CLI::App* cmd, perf::SystemDescriptor& s) {
  cmd->add_option("--cores", s.n_cores, "Number of SVM cores")->check(CLI::PositiveNumber);
  cmd->add_flag("--dpr", s.dpr, "Single reconfigurable partition hosting one core");
  cmd->add_flag("--timer", s.timer, "Include the cycle-counter peripheral");
  cmd->add_option("--variant", s.variant, "Model variant for calibration corrections (e.g. M, N)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascade linear-SVM engine and reconfigurable accelerator simulator"};
  app.require_subcommand(1);

  cli::BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "Precompute the AC weight artifact from an SVM-Light model file");
  build_cmd->add_option("model", build.model_path, "SVM-Light model file (linear kernel)")->required();
  build_cmd->add_option("-o,--out", build.out_path, "Weight artifact to write")->required();
  build_cmd->add_option("--name", build.name, "Artifact name (default: model file stem)");

  cli::SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Estimate resources, power and latency of a system");
  add_system_flags(synth_cmd, synth.system);
  synth_cmd->add_option("--features", synth.features, "Features per core")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--clock-hz", synth.clock_hz, "Fabric clock")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--calibration", synth.calibration_path, "key = value calibration overrides");
  synth_cmd->add_option("--csv", synth.csv_path, "Write the utilization row as CSV");

  cli::RunConfig run;
  std::string mode = "monolithic", port = "jtag", policy = "lazy", precision = "double";
  auto* run_cmd = app.add_subcommand("run", "Classify an instance file");
  run_cmd->add_option("--mode", mode, "monolithic | cascade | dpr")->check(CLI::IsMember({"monolithic", "cascade", "dpr"}));
  run_cmd->add_option("--model", run.model_path, "Weight artifact (monolithic mode)");
  run_cmd->add_option("--cascade", run.cascade_path, "Cascade file (cascade and dpr modes)");
  run_cmd->add_option("--instances", run.instances_path, "Instance file")->required();
  run_cmd->add_flag("--labeled", run.labeled, "Instances carry a leading +1/-1 label");
  run_cmd->add_option("--clock-hz", run.clock_hz, "Fabric clock")->check(CLI::PositiveNumber);
  run_cmd->add_option("--port", port, "Configuration port for dpr mode")->check(CLI::IsMember({"jtag", "pcap"}));
  run_cmd->add_option("--policy", policy, "Swap policy for dpr mode")->check(CLI::IsMember({"lazy", "eager"}));
  run_cmd->add_option("--precision", precision, "Core arithmetic")->check(CLI::IsMember({"double", "single"}));
  run_cmd->add_flag("--timer", run.timer, "Include the cycle-counter peripheral");
  run_cmd->add_option("--calibration", run.calibration_path, "key = value calibration overrides");
  run_cmd->add_option("--report", run.report_path, "Write the machine-readable run report");
  run_cmd->add_option("--csv", run.csv_path, "Write per-instance results as CSV");
  run_cmd->add_option("--trace", run.trace_path, "Write the device event trace (dpr mode)");
  run_cmd->add_option("--threads", run.threads, "Batch threads (0 = all cores)");

  cli::ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Compare run reports side by side");
  report_cmd->add_option("reports", report.report_paths, "Run reports")->required();
  report_cmd->add_option("--csv", report.csv_path, "Write the comparison as CSV");

  auto* gen_cmd = app.add_subcommand("gen", "Generate seeded synthetic inputs");
  gen_cmd->require_subcommand(1);
  cli::GenModelOptions gen_model;
  auto* gen_model_cmd = gen_cmd->add_subcommand("model", "SVM-Light model file");
  gen_model_cmd->add_option("-o,--out", gen_model.out_path)->required();
  gen_model_cmd->add_option("--name", gen_model.name);
  gen_model_cmd->add_option("--dim", gen_model.dimension)->check(CLI::PositiveNumber);
  gen_model_cmd->add_option("--svs", gen_model.support_vectors)->check(CLI::PositiveNumber);
  gen_model_cmd->add_option("--seed", gen_model.seed);
  gen_model_cmd->add_option("--positive-rate", gen_model.positive_rate, "Target fraction of positive verdicts")
      ->check(CLI::Range(0.0, 1.0));
  cli::GenInstancesOptions gen_inst;
  auto* gen_inst_cmd = gen_cmd->add_subcommand("instances", "Instance file");
  gen_inst_cmd->add_option("-o,--out", gen_inst.out_path)->required();
  gen_inst_cmd->add_option("--dim", gen_inst.dimension)->check(CLI::PositiveNumber);
  gen_inst_cmd->add_option("--count", gen_inst.count);
  gen_inst_cmd->add_option("--seed", gen_inst.seed);
  gen_inst_cmd->add_flag("--labeled", gen_inst.labeled);
  gen_inst_cmd->add_option("--noise", gen_inst.label_noise, "Label flip probability")->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::exit_ok : cli::exit_usage;
  }

  try {
    if (*build_cmd) {
      std::cout << cli::cmd_build(build);
    } else if (*synth_cmd) {
      std::cout << cli::cmd_synth(synth);
    } else if (*run_cmd) {
      run.mode = cli::parse_run_mode(mode);
      run.port = fabric::parse_port_kind(port);
      run.policy = fabric::parse_swap_policy(policy);
      run.precision = precision == "single" ? svm::Precision::single_precision : svm::Precision::double_precision;
      std::cout << cli::cmd_run(run);
    } else if (*report_cmd) {
      std::cout << cli::cmd_report(report);
    } else if (*gen_model_cmd) {
      std::cout << cli::cmd_gen_model(gen_model);
    } else if (*gen_inst_cmd) {
      std::cout << cli::cmd_gen_instances(gen_inst);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e.kind());
  }
  return cli::exit_ok;
}
