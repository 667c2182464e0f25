#include "dprsvm/svm/decision.hpp"

#include <string>

#include "dprsvm/errors.hpp"

namespace dprsvm::svm {

namespace {

void check_dims(Index expected, Index got, const std::string& what) {
  if (expected != got) {
    throw DimensionError(what + " expects " + std::to_string(expected) + " features, instance has " +
                         std::to_string(got));
  }
}

}  // namespace

WeightArtifact accumulate_weights(const SvmModel& model, Precision precision) {
  return precision == Precision::single_precision ? accumulate_weights<float>(model) : accumulate_weights<double>(model);
}

template <typename Scalar>
Scalar decision_value(const WeightArtifact& weights, const FeatureVector& x) {
  check_dims(weights.dimension(), x.dimension(), "weight artifact '" + weights.name() + "'");
  return ordered_dot<Scalar>(weights.ac(), x.values()) - static_cast<Scalar>(weights.bias());
}

template <typename Scalar>
Scalar direct_decision_value(const SvmModel& model, const FeatureVector& x) {
  check_dims(model.dimension(), x.dimension(), "model '" + model.name() + "'");
  Scalar acc(0);
  for (const auto& sv : model.support_vectors()) {
    acc += static_cast<Scalar>(sv.coefficient) * ordered_dot<Scalar>(sv.features.values(), x.values());
  }
  return acc - static_cast<Scalar>(model.bias());
}

template float decision_value<float>(const WeightArtifact&, const FeatureVector&);
template double decision_value<double>(const WeightArtifact&, const FeatureVector&);
template float direct_decision_value<float>(const SvmModel&, const FeatureVector&);
template double direct_decision_value<double>(const SvmModel&, const FeatureVector&);

double decision_value(const WeightArtifact& weights, const FeatureVector& x, Precision precision) {
  if (precision == Precision::single_precision) return decision_value<float>(weights, x);
  return decision_value<double>(weights, x);
}

DecisionOutcome classify(const WeightArtifact& weights, const FeatureVector& x, Precision precision) {
  const double d = decision_value(weights, x, precision);
  return {sign_label(d), d};
}

DecisionOutcome classify_direct(const SvmModel& model, const FeatureVector& x, Precision precision) {
  const double d = precision == Precision::single_precision ? direct_decision_value<float>(model, x)
                                                             : direct_decision_value<double>(model, x);
  return {sign_label(d), d};
}

}  // namespace dprsvm::svm
