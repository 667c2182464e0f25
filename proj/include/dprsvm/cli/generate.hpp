#pragma once

// Seeded synthetic models and instances standing in for the clinical data.

#include <cstdint>
#include <optional>
#include <vector>

#include "dprsvm/svm/io.hpp"
#include "dprsvm/svm/types.hpp"

namespace dprsvm::cli {

struct ModelGenOptions {
  std::string name = "model";
  Index dimension = 27;
  std::size_t support_vectors = 61;
  std::uint64_t seed = 1;
  double sparsity = 0.1;  // probability a feature is exactly zero
  /// When set, the bias is chosen so about this fraction of random instances score >= 0.
  std::optional<double> positive_rate;
};

svm::SvmModel generate_model(const ModelGenOptions& options);

struct InstanceGenOptions {
  Index dimension = 27;
  std::size_t count = 100;
  std::uint64_t seed = 2;
  bool labeled = false;
  double label_noise = 0.1;       // chance the hidden-hyperplane label is flipped
  std::uint64_t truth_seed = 99;  // seeds the hidden hyperplane
};

/// Feature values are uniform in [0, 1) and exactly representable as float,
/// so single-precision register windows carry them without rounding.
std::vector<svm::Instance> generate_instances(const InstanceGenOptions& options);

}  // namespace dprsvm::cli
