#pragma once

// Subcommand bodies. Each returns the text it would print; file outputs are
// written by the command itself.

#include <optional>
#include <string>
#include <vector>

#include "dprsvm/cli/run_report.hpp"
#include "dprsvm/errors.hpp"
#include "dprsvm/fabric/dpr.hpp"
#include "dprsvm/perf/calibration.hpp"
#include "dprsvm/perf/report.hpp"

namespace dprsvm::cli {

/// Process exit codes.
enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_parse = 2,
  exit_dimension = 3,
  exit_capacity = 4,
  exit_configuration = 5,
  exit_structure = 6,
};

int exit_code_for(ErrorKind kind);

struct BuildOptions {
  std::string model_path;
  std::string out_path;
  std::optional<std::string> name;  // default: model file stem
};

std::string cmd_build(const BuildOptions& o);

struct SynthOptions {
  perf::SystemDescriptor system;
  std::optional<std::string> calibration_path;
  std::optional<double> clock_hz;
  Index features = 27;
  std::optional<std::string> csv_path;
};

std::string cmd_synth(const SynthOptions& o);

struct RunConfig {
  RunMode mode = RunMode::monolithic;
  std::optional<std::string> model_path;    // weight artifact, monolithic mode
  std::optional<std::string> cascade_path;  // cascade file, cascade and dpr modes
  std::string instances_path;
  bool labeled = false;
  std::optional<double> clock_hz;
  fabric::PortKind port = fabric::PortKind::jtag;
  fabric::SwapPolicy policy = fabric::SwapPolicy::lazy;
  svm::Precision precision = svm::Precision::double_precision;
  bool timer = false;
  std::optional<std::string> calibration_path;
  std::optional<std::string> report_path;
  std::optional<std::string> csv_path;
  std::optional<std::string> trace_path;
  unsigned threads = 0;
};

/// Throws StructuralError when a path required by the mode is missing.
RunReport execute_run(const RunConfig& config);
std::string cmd_run(const RunConfig& config);

struct ReportOptions {
  std::vector<std::string> report_paths;
  std::optional<std::string> csv_path;
};

std::string cmd_report(const ReportOptions& o);

/// Rows that cmd_report renders, one per report, in argument order.
std::vector<perf::SystemRow> report_rows(const std::vector<std::string>& report_paths);

struct GenModelOptions {
  std::string out_path;
  std::string name = "model";
  Index dimension = 27;
  std::size_t support_vectors = 61;
  std::uint64_t seed = 1;
  std::optional<double> positive_rate;
};

struct GenInstancesOptions {
  std::string out_path;
  Index dimension = 27;
  std::size_t count = 100;
  std::uint64_t seed = 2;
  bool labeled = false;
  double label_noise = 0.1;
};

std::string cmd_gen_model(const GenModelOptions& o);
std::string cmd_gen_instances(const GenInstancesOptions& o);

}  // namespace dprsvm::cli
