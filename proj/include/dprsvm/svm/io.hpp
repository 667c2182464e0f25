#pragma once

// Text formats for trained models, weight artifacts and test instances.
//
// Model files follow the linear subset of the SVM-Light layout: version,
// kernel type, kernel parameters, highest feature index, training document
// count, SV count plus one, threshold, then one `<alpha*y> <idx>:<val> ... #`
// line per support vector. Both a four-parameter header (10 lines) and
// SVM-Light's own five-parameter header (11 lines, ending in `-u`) are read;
// the writer emits the SVM-Light layout.
//
// Weight artifacts are canonical: `svm-ac v1`, `name`, `features`, `bias`,
// then one coefficient per line, shortest round-trip decimals, LF endings.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dprsvm/svm/types.hpp"

namespace dprsvm::svm {

SvmModel parse_model_file(std::string_view bytes, const std::string& name = "model");
std::string serialize_model_file(const SvmModel& model);

std::string serialize_weight_artifact(const WeightArtifact& w);
WeightArtifact parse_weight_artifact(std::string_view bytes);

struct Instance {
  std::optional<Label> label;
  FeatureVector features;
};

enum class InstanceMode { unlabeled, labeled };

/// Comma or whitespace separated decimals, one instance per line; '#' lines and
/// blank lines are skipped. In labeled mode the first value is the +1/-1 label.
std::vector<Instance> parse_instance_file(std::string_view bytes, Index expected_dim,
                                          InstanceMode mode = InstanceMode::unlabeled);
std::string serialize_instances(std::span<const Instance> instances, InstanceMode mode);

}  // namespace dprsvm::svm
