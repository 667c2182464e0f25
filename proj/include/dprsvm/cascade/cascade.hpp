#pragma once

// n-stage cascade with early exit: stages run in order on the same instance,
// the first stage that answers +1 decides, otherwise the last stage's -1 stands.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dprsvm/svm/io.hpp"
#include "dprsvm/svm/types.hpp"

namespace dprsvm::cascade {

struct CascadeStage {
  std::string name;
  svm::WeightArtifact weights;
};

class CascadeSpec {
 public:
  /// Throws StructuralError for an empty list or duplicate names, DimensionError
  /// when stage dimensions differ.
  explicit CascadeSpec(std::vector<CascadeStage> stages);

  [[nodiscard]] const std::vector<CascadeStage>& stages() const noexcept { return stages_; }
  [[nodiscard]] std::size_t size() const noexcept { return stages_.size(); }
  [[nodiscard]] Index dimension() const noexcept { return stages_.front().weights.dimension(); }
  [[nodiscard]] const CascadeStage& stage(std::size_t one_based) const { return stages_.at(one_based - 1); }

 private:
  std::vector<CascadeStage> stages_;
};

struct CascadeResult {
  svm::Label label;
  std::size_t exit_stage;                    // 1-based
  std::vector<double> per_stage_distances;   // stages 1..exit_stage only

  friend bool operator==(const CascadeResult&, const CascadeResult&) = default;
};

CascadeResult cascade_classify(const CascadeSpec& spec, const svm::FeatureVector& x,
                               svm::Precision precision = svm::Precision::double_precision);

struct BatchOptions {
  svm::Precision precision = svm::Precision::double_precision;
  unsigned threads = 0;  // 0: hardware concurrency; 1: sequential
};

/// Results are in input order whatever the thread count. A dimension mismatch
/// aborts before any work with a DimensionError naming the first bad index.
std::vector<CascadeResult> cascade_classify_batch(const CascadeSpec& spec, std::span<const svm::FeatureVector> instances,
                                                  const BatchOptions& options = {});
std::vector<CascadeResult> cascade_classify_batch(const CascadeSpec& spec, std::span<const svm::Instance> instances,
                                                  const BatchOptions& options = {});

struct EvaluationReport {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::optional<double> accuracy;     // empty when there are no instances
  std::optional<double> sensitivity;  // empty when TP + FN == 0
  std::optional<double> specificity;  // empty when TN + FP == 0
  std::vector<std::size_t> exit_histogram;  // [k] counts exits at stage k+1

  [[nodiscard]] std::size_t total() const noexcept { return tp + tn + fp + fn; }
};

/// Confusion counts with +1 (melanoma) as the positive class.
EvaluationReport tally(std::span<const svm::Label> truth, std::span<const CascadeResult> results, std::size_t num_stages);

/// Every instance must carry a label (StructuralError otherwise).
EvaluationReport evaluate(const CascadeSpec& spec, std::span<const svm::Instance> labeled,
                          const BatchOptions& options = {});

/// Cascade description file: `cascade v1` then `stage <name> <artifact-path>` lines.
struct CascadeFileEntry {
  std::string name;
  std::string artifact_path;
};

std::vector<CascadeFileEntry> parse_cascade_file(std::string_view bytes);
std::string serialize_cascade_file(std::span<const CascadeFileEntry> entries);

/// Reads a cascade file and its artifacts; relative paths resolve against the file's directory.
CascadeSpec load_cascade(const std::string& path);

}  // namespace dprsvm::cascade
