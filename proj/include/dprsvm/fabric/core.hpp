#pragma once

// Register-level model of one SVM core behind a 32-bit AXI-lite style window.
//
// Word map:
//   0        CTRL      bit0 START (self-clearing)
//   1        STATUS    bit0 DONE, bit1 IDLE          (read-only)
//   2        DIM       feature count of loaded core  (read-only)
//   16..     INPUT     one single-precision feature per word
//   128      RESULT    +1 / -1 as int32              (read-only)
//   129,130  DISTANCE  double, low word first        (read-only)
//   132,133  TIMER     free-running cycle counter, low word first (read-only, timer systems only)

#include <array>
#include <cstdint>
#include <optional>

#include "dprsvm/perf/latency.hpp"
#include "dprsvm/svm/types.hpp"

namespace dprsvm::fabric {

namespace reg {
inline constexpr std::size_t ctrl = 0;
inline constexpr std::size_t status = 1;
inline constexpr std::size_t dim = 2;
inline constexpr std::size_t input_base = 16;
inline constexpr std::size_t result = 128;
inline constexpr std::size_t distance_lo = 129;
inline constexpr std::size_t distance_hi = 130;
inline constexpr std::size_t timer_lo = 132;
inline constexpr std::size_t timer_hi = 133;
inline constexpr std::size_t map_words = 256;

inline constexpr std::uint32_t ctrl_start = 1u << 0;
inline constexpr std::uint32_t status_done = 1u << 0;
inline constexpr std::uint32_t status_idle = 1u << 1;

/// The input window ends where RESULT begins.
inline constexpr Index max_features = static_cast<Index>(result - input_base);
}  // namespace reg

std::uint32_t float_bits(float v);
float bits_float(std::uint32_t w);

struct CoreOptions {
  perf::LatencyParams latency = perf::LatencyParams::pipelined_defaults();
  svm::Precision precision = svm::Precision::double_precision;
  bool timer = false;
};

class SvmCore {
 public:
  explicit SvmCore(CoreOptions options = {});

  /// Installs new weights and resets the register file (inputs read back as 0.0).
  void load(const svm::WeightArtifact& weights);
  void unload();

  [[nodiscard]] bool loaded() const noexcept { return weights_.has_value(); }
  [[nodiscard]] const svm::WeightArtifact& weights() const;
  [[nodiscard]] const CoreOptions& options() const noexcept { return options_; }

  /// Host-side bus access. Writing START to CTRL runs the core to completion.
  /// Writes to read-only or unmapped words throw ConfigurationError.
  void write(std::size_t word, std::uint32_t value);
  [[nodiscard]] std::uint32_t read(std::size_t word) const;

  /// Cycle cost of the most recent run.
  [[nodiscard]] std::uint64_t last_cycles() const noexcept { return last_cycles_; }
  void set_timer(std::uint64_t cycles);

 private:
  void execute();

  CoreOptions options_;
  std::optional<svm::WeightArtifact> weights_;
  std::array<std::uint32_t, reg::map_words> words_{};
  std::uint64_t last_cycles_ = 0;
};

/// Host driver transaction: write features, set START, poll DONE, read RESULT/DISTANCE.
svm::DecisionOutcome host_classify(SvmCore& core, const svm::FeatureVector& x);

/// Reads RESULT and DISTANCE after a run.
svm::DecisionOutcome read_outcome(const SvmCore& core);

}  // namespace dprsvm::fabric
