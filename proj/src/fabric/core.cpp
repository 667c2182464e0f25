#include "dprsvm/fabric/core.hpp"

#include <bit>
#include <string>

#include "dprsvm/errors.hpp"
#include "dprsvm/svm/decision.hpp"

namespace dprsvm::fabric {

std::uint32_t float_bits(float v) { return std::bit_cast<std::uint32_t>(v); }
float bits_float(std::uint32_t w) { return std::bit_cast<float>(w); }

SvmCore::SvmCore(CoreOptions options) : options_(options) { options_.latency.validate(); }

void SvmCore::load(const svm::WeightArtifact& weights) {
  if (weights.dimension() > reg::max_features) {
    throw DimensionError("core input window holds at most " + std::to_string(reg::max_features) + " features, '" +
                         weights.name() + "' has " + std::to_string(weights.dimension()));
  }
  weights_ = weights;
  words_.fill(0);
  words_[reg::status] = reg::status_idle;
  words_[reg::dim] = static_cast<std::uint32_t>(weights.dimension());
  last_cycles_ = 0;
}

void SvmCore::unload() {
  weights_.reset();
  words_.fill(0);
  last_cycles_ = 0;
}

const svm::WeightArtifact& SvmCore::weights() const {
  if (!weights_) throw ConfigurationError("no module loaded in the core");
  return *weights_;
}

void SvmCore::write(std::size_t word, std::uint32_t value) {
  const bool input = word >= reg::input_base && word < reg::input_base + static_cast<std::size_t>(reg::max_features);
  if (word == reg::ctrl) {
    if (value & reg::ctrl_start) {
      words_[reg::ctrl] = value;
      execute();
    }
    return;
  }
  if (!input) throw ConfigurationError("register word " + std::to_string(word) + " is not host-writable");
  words_[word] = value;
}

std::uint32_t SvmCore::read(std::size_t word) const {
  if (word >= reg::map_words) throw ConfigurationError("register word " + std::to_string(word) + " is unmapped");
  return words_[word];
}

void SvmCore::set_timer(std::uint64_t cycles) {
  if (!options_.timer) return;
  words_[reg::timer_lo] = static_cast<std::uint32_t>(cycles);
  words_[reg::timer_hi] = static_cast<std::uint32_t>(cycles >> 32);
}

void SvmCore::execute() {
  const auto& w = weights();
  const Index n = w.dimension();
  VectorX<double> x(n);
  for (Index j = 0; j < n; ++j) x[j] = static_cast<double>(bits_float(words_[reg::input_base + static_cast<std::size_t>(j)]));

  double distance = 0.0;
  if (options_.precision == svm::Precision::single_precision) {
    distance = svm::ordered_dot<float>(w.ac(), x) - static_cast<float>(w.bias());
  } else {
    distance = svm::ordered_dot<double>(w.ac(), x) - w.bias();
  }
  const auto label = svm::sign_label(distance);
  const auto bits = std::bit_cast<std::uint64_t>(distance);

  words_[reg::result] = std::bit_cast<std::uint32_t>(static_cast<std::int32_t>(svm::to_int(label)));
  words_[reg::distance_lo] = static_cast<std::uint32_t>(bits);
  words_[reg::distance_hi] = static_cast<std::uint32_t>(bits >> 32);
  words_[reg::ctrl] &= ~reg::ctrl_start;
  words_[reg::status] = reg::status_done | reg::status_idle;
  last_cycles_ = perf::core_latency_cycles(n, options_.latency);
}

svm::DecisionOutcome read_outcome(const SvmCore& core) {
  const auto lo = static_cast<std::uint64_t>(core.read(reg::distance_lo));
  const auto hi = static_cast<std::uint64_t>(core.read(reg::distance_hi));
  const auto result = std::bit_cast<std::int32_t>(core.read(reg::result));
  return {result >= 0 ? svm::Label::positive : svm::Label::negative, std::bit_cast<double>(lo | (hi << 32))};
}

svm::DecisionOutcome host_classify(SvmCore& core, const svm::FeatureVector& x) {
  const auto& w = core.weights();
  if (x.dimension() != w.dimension()) {
    throw DimensionError("core '" + w.name() + "' expects " + std::to_string(w.dimension()) + " features, instance has " +
                         std::to_string(x.dimension()));
  }
  for (Index j = 0; j < x.dimension(); ++j) {
    core.write(reg::input_base + static_cast<std::size_t>(j), float_bits(static_cast<float>(x[j])));
  }
  core.write(reg::ctrl, reg::ctrl_start);
  // The simulated core completes synchronously, so a single poll sees DONE.
  if ((core.read(reg::status) & reg::status_done) == 0) throw ConfigurationError("core did not signal DONE");
  return read_outcome(core);
}

}  // namespace dprsvm::fabric
