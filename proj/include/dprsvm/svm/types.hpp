#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace dprsvm {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

}  // namespace dprsvm

namespace dprsvm::svm {

/// Class label as returned by the decision function: +1 melanoma, -1 non-melanoma.
enum class Label : int { negative = -1, positive = 1 };

inline int to_int(Label l) noexcept { return static_cast<int>(l); }
Label label_from_int(long value);  // throws ParseError unless value is +1 or -1

/// Nonempty, all-finite dense feature vector.
class FeatureVector {
 public:
  explicit FeatureVector(VectorX<double> values);
  explicit FeatureVector(const std::vector<double>& values);

  static FeatureVector zeros(Index dimension);

  [[nodiscard]] Index dimension() const noexcept { return values_.size(); }
  [[nodiscard]] const VectorX<double>& values() const noexcept { return values_; }
  [[nodiscard]] double operator[](Index i) const { return values_[i]; }

  friend bool operator==(const FeatureVector& a, const FeatureVector& b) {
    return a.values_.size() == b.values_.size() && a.values_ == b.values_;
  }

 private:
  VectorX<double> values_;
};

/// One training sample that survived optimisation; `coefficient` is alpha_i * y_i.
struct SupportVector {
  SupportVector(double coefficient, FeatureVector features);

  double coefficient;
  FeatureVector features;
};

class SvmModel {
 public:
  /// Throws StructuralError on an empty SV list, a nonfinite bias, or an SV whose
  /// dimension differs from `dimension` (the message names the SV index).
  SvmModel(std::string name, Index dimension, double bias, std::vector<SupportVector> support_vectors);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] Index dimension() const noexcept { return dimension_; }
  [[nodiscard]] double bias() const noexcept { return bias_; }
  [[nodiscard]] const std::vector<SupportVector>& support_vectors() const noexcept { return svs_; }

 private:
  std::string name_;
  Index dimension_;
  double bias_;
  std::vector<SupportVector> svs_;
};

/// Precomputed AC vector and bias: everything a core needs to classify online.
class WeightArtifact {
 public:
  WeightArtifact(std::string name, VectorX<double> ac, double bias);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] Index dimension() const noexcept { return ac_.size(); }
  [[nodiscard]] const VectorX<double>& ac() const noexcept { return ac_; }
  [[nodiscard]] double bias() const noexcept { return bias_; }

  friend bool operator==(const WeightArtifact& a, const WeightArtifact& b) {
    return a.name_ == b.name_ && a.ac_.size() == b.ac_.size() && a.ac_ == b.ac_ && a.bias_ == b.bias_;
  }

 private:
  std::string name_;
  VectorX<double> ac_;
  double bias_;
};

struct DecisionOutcome {
  Label label;
  double distance;  // value before the sign rule
};

/// Arithmetic used for the dot products. Hardware cores use single precision.
enum class Precision { double_precision, single_precision };

}  // namespace dprsvm::svm
