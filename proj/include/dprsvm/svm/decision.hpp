#pragma once

// Linear-kernel decision function, evaluated two ways:
//
//   direct:      d(x) = sum_i c_i (sv_i . x) - b
//   factorized:  ac = sum_i c_i sv_i  (offline),  d(x) = ac . x - b  (online)
//
// Every reduction runs in ascending index order so both routes are
// deterministic. Eigen's own reductions are not used for that reason.

#include "dprsvm/svm/types.hpp"

namespace dprsvm::svm {

/// sum_j a[j] * b[j], accumulated in Scalar in ascending j.
template <typename Scalar, typename DerivedA, typename DerivedB>
Scalar ordered_dot(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Scalar acc(0);
  for (Index j = 0; j < a.size(); ++j) acc += static_cast<Scalar>(a[j]) * static_cast<Scalar>(b[j]);
  return acc;
}

/// Label rule: distance >= 0 is positive, including exactly zero.
inline Label sign_label(double distance) noexcept { return distance >= 0.0 ? Label::positive : Label::negative; }

/// AC vector in Scalar arithmetic; ascending SV order. Stored back as double.
template <typename Scalar = double>
WeightArtifact accumulate_weights(const SvmModel& model) {
  VectorX<Scalar> ac = VectorX<Scalar>::Zero(model.dimension());
  for (const auto& sv : model.support_vectors()) {
    const auto c = static_cast<Scalar>(sv.coefficient);
    for (Index j = 0; j < ac.size(); ++j) ac[j] += c * static_cast<Scalar>(sv.features[j]);
  }
  return WeightArtifact(model.name(), ac.template cast<double>(), static_cast<double>(static_cast<Scalar>(model.bias())));
}

WeightArtifact accumulate_weights(const SvmModel& model, Precision precision);

template <typename Scalar = double>
Scalar decision_value(const WeightArtifact& weights, const FeatureVector& x);

template <typename Scalar = double>
Scalar direct_decision_value(const SvmModel& model, const FeatureVector& x);

/// Throws DimensionError when the dimensions differ.
double decision_value(const WeightArtifact& weights, const FeatureVector& x, Precision precision);

DecisionOutcome classify(const WeightArtifact& weights, const FeatureVector& x,
                         Precision precision = Precision::double_precision);

/// Reference path that never forms the AC vector.
DecisionOutcome classify_direct(const SvmModel& model, const FeatureVector& x,
                                Precision precision = Precision::double_precision);

}  // namespace dprsvm::svm
