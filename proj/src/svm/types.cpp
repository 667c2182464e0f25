#include "dprsvm/svm/types.hpp"

#include <cmath>
#include <utility>

#include "dprsvm/errors.hpp"
#include "dprsvm/text.hpp"

namespace dprsvm::svm {

Label label_from_int(long value) {
  if (value == 1) return Label::positive;
  if (value == -1) return Label::negative;
  throw ParseError("label must be +1 or -1, got " + std::to_string(value));
}

FeatureVector::FeatureVector(VectorX<double> values) : values_(std::move(values)) {
  if (values_.size() == 0) throw DimensionError("feature vector must have dimension > 0");
  if (!values_.allFinite()) throw StructuralError("feature vector contains a non-finite value");
}

FeatureVector::FeatureVector(const std::vector<double>& values)
    : FeatureVector(VectorX<double>(Eigen::Map<const VectorX<double>>(values.data(), static_cast<Index>(values.size())))) {}

FeatureVector FeatureVector::zeros(Index dimension) { return FeatureVector(VectorX<double>::Zero(dimension)); }

SupportVector::SupportVector(double coefficient_, FeatureVector features_)
    : coefficient(coefficient_), features(std::move(features_)) {
  if (!std::isfinite(coefficient) || coefficient == 0.0) {
    throw StructuralError("support vector coefficient must be finite and nonzero");
  }
}

SvmModel::SvmModel(std::string name, Index dimension, double bias, std::vector<SupportVector> support_vectors)
    : name_(std::move(name)), dimension_(dimension), bias_(bias), svs_(std::move(support_vectors)) {
  if (!text::is_identifier(name_)) throw StructuralError("model name '" + name_ + "' is not an identifier");
  if (dimension_ <= 0) throw StructuralError("model dimension must be positive");
  if (!std::isfinite(bias_)) throw StructuralError("model bias must be finite");
  if (svs_.empty()) throw StructuralError("model '" + name_ + "' has no support vectors");
  for (std::size_t i = 0; i < svs_.size(); ++i) {
    if (svs_[i].features.dimension() != dimension_) {
      throw StructuralError("support vector " + std::to_string(i) + " has dimension " +
                            std::to_string(svs_[i].features.dimension()) + ", model has " +
                            std::to_string(dimension_));
    }
  }
}

WeightArtifact::WeightArtifact(std::string name, VectorX<double> ac, double bias)
    : name_(std::move(name)), ac_(std::move(ac)), bias_(bias) {
  if (!text::is_identifier(name_)) throw StructuralError("artifact name '" + name_ + "' is not an identifier");
  if (ac_.size() == 0) throw DimensionError("weight artifact must have dimension > 0");
  if (!ac_.allFinite() || !std::isfinite(bias_)) throw StructuralError("weight artifact contains a non-finite value");
}

}  // namespace dprsvm::svm
