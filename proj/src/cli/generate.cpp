#include "dprsvm/cli/generate.hpp"

#include <algorithm>
#include <random>

#include "dprsvm/errors.hpp"
#include "dprsvm/svm/decision.hpp"

namespace dprsvm::cli {

namespace {

double float_exact(double v) { return static_cast<double>(static_cast<float>(v)); }

VectorX<double> random_features(std::mt19937_64& rng, Index dim, double sparsity) {
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::bernoulli_distribution zero(sparsity);
  VectorX<double> x(dim);
  for (Index j = 0; j < dim; ++j) x[j] = zero(rng) ? 0.0 : float_exact(value(rng));
  return x;
}

}  // namespace

svm::SvmModel generate_model(const ModelGenOptions& o) {
  if (o.dimension <= 0 || o.support_vectors == 0) throw StructuralError("model generator needs dim > 0 and svs > 0");
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> magnitude(0.05, 1.0);
  std::bernoulli_distribution sign(0.5);
  std::uniform_real_distribution<double> bias_dist(-1.0, 1.0);

  std::vector<svm::SupportVector> svs;
  svs.reserve(o.support_vectors);
  for (std::size_t i = 0; i < o.support_vectors; ++i) {
    const double c = (sign(rng) ? 1.0 : -1.0) * magnitude(rng);
    svs.emplace_back(c, svm::FeatureVector(random_features(rng, o.dimension, o.sparsity)));
  }
  double bias = bias_dist(rng);
  if (o.positive_rate) {
    const double rate = std::clamp(*o.positive_rate, 0.0, 1.0);
    const svm::SvmModel probe(o.name, o.dimension, 0.0, svs);
    const auto w = svm::accumulate_weights(probe);
    std::vector<double> scores;
    constexpr std::size_t kProbe = 2000;
    for (std::size_t i = 0; i < kProbe; ++i) {
      scores.push_back(svm::decision_value(w, svm::FeatureVector(random_features(rng, o.dimension, 0.0)),
                                           svm::Precision::double_precision));
    }
    std::sort(scores.begin(), scores.end());
    const auto k = std::min(kProbe - 1, static_cast<std::size_t>((1.0 - rate) * static_cast<double>(kProbe)));
    bias = scores[k];
  }
  return svm::SvmModel(o.name, o.dimension, bias, std::move(svs));
}

std::vector<svm::Instance> generate_instances(const InstanceGenOptions& o) {
  if (o.dimension <= 0) throw StructuralError("instance generator needs dim > 0");
  std::mt19937_64 rng(o.seed);
  std::mt19937_64 truth_rng(o.truth_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorX<double> hidden(o.dimension);
  for (Index j = 0; j < o.dimension; ++j) hidden[j] = normal(truth_rng);
  const double hidden_bias = 0.5 * hidden.sum();
  std::bernoulli_distribution flip(o.label_noise);

  std::vector<svm::Instance> out;
  out.reserve(o.count);
  for (std::size_t i = 0; i < o.count; ++i) {
    auto x = random_features(rng, o.dimension, 0.0);
    std::optional<svm::Label> label;
    if (o.labeled) {
      bool positive = svm::ordered_dot<double>(hidden, x) - hidden_bias >= 0.0;
      if (flip(rng)) positive = !positive;
      label = positive ? svm::Label::positive : svm::Label::negative;
    }
    out.push_back({label, svm::FeatureVector(std::move(x))});
  }
  return out;
}

}  // namespace dprsvm::cli
