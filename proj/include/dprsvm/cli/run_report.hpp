#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dprsvm/cascade/cascade.hpp"
#include "dprsvm/fabric/resources.hpp"

namespace dprsvm::cli {

enum class RunMode { monolithic, cascade, dpr };

std::string_view to_string(RunMode m);
RunMode parse_run_mode(std::string_view s);

struct InstanceResult {
  svm::Label label;
  std::size_t exit_stage;
  double time_s;  // compute time of this instance
  std::optional<svm::Label> truth;
  std::vector<double> distances;

  friend bool operator==(const InstanceResult&, const InstanceResult&) = default;
};

struct RunReport {
  RunMode mode = RunMode::monolithic;
  std::vector<std::string> stages;
  double clock_hz = 100.0e6;
  std::string precision = "double";
  std::string port = "-";
  std::string policy = "-";
  bool timer = false;
  std::string source = "-";  // provenance note from the instance file, e.g. the generator seed
  fabric::ResourceFootprint footprint;
  double power_watts = 0.0;
  double worst_case_time_s = 0.0;  // every stage evaluated
  double compute_time_s = 0.0;     // sum of per-instance times
  double config_time_s = 0.0;
  std::size_t swaps = 0;
  std::optional<cascade::EvaluationReport> evaluation;
  std::vector<InstanceResult> results;
};

/// Line-oriented, fixed field order, shortest round-trip reals.
std::string serialize_run_report(const RunReport& r);
RunReport parse_run_report(std::string_view bytes);

/// Per-instance CSV: index,label,exit_stage,time_us,truth,distance_1..distance_n
std::string run_results_csv(const RunReport& r);

/// Human summary printed by `run`.
std::string run_summary(const RunReport& r);

}  // namespace dprsvm::cli
