#include <gtest/gtest.h>

#include <cstring>

#include "dprsvm/cascade/cascade.hpp"
#include "dprsvm/errors.hpp"
#include "dprsvm/fabric/bitstream.hpp"
#include "dprsvm/fabric/core.hpp"
#include "dprsvm/fabric/device.hpp"
#include "dprsvm/fabric/dpr.hpp"
#include "dprsvm/svm/decision.hpp"
#include "oracles.hpp"

using namespace dprsvm;
using namespace dprsvm::fabric;
using dprsvm::svm::Label;
using oracle::fv;

namespace {

const ResourceFootprint kPerCore{739, 620, 2, 1, 5};
const ResourceFootprint kBase{307, 238, 68, 0, 0};

ReconfigurableModule rm(const std::string& name, const svm::WeightArtifact& w, ResourceFootprint fp = kPerCore) {
  return {name, w, fp, perf::LatencyParams::pipelined_defaults()};
}

struct Fixture {
  svm::WeightArtifact m;
  svm::WeightArtifact n;
  ConfigurationLibrary library;
};

Fixture two_modules(std::uint64_t seed = 1, std::size_t dim = 27) {
  oracle::Rng rng(seed);
  auto m = rng.weights(dim, "M");
  auto n = rng.weights(dim, "N");
  auto lib = build_configuration_library(Device::zynq_7020(), kBase, {rm("N", n), rm("M", m)});
  return {m, n, lib};
}

DeviceState configured(const ConfigurationLibrary& lib, const std::string& rm_name = "M") {
  return configure_full(DeviceState(lib), lib.full(rm_name), ConfigPort::jtag());
}

}  // namespace

TEST(Library, TwoModulesGiveFourBitstreamsInNameOrder) {
  const auto f = two_modules();
  ASSERT_EQ(f.library.bitstreams.size(), 4u);
  EXPECT_EQ(f.library.bitstreams[0].rm_name, "M");
  EXPECT_EQ(f.library.bitstreams[0].kind, BitstreamKind::full);
  EXPECT_EQ(f.library.bitstreams[1].rm_name, "M");
  EXPECT_EQ(f.library.bitstreams[1].kind, BitstreamKind::partial);
  EXPECT_EQ(f.library.bitstreams[2].rm_name, "N");
  EXPECT_EQ(f.library.modules.front().name, "M");
  EXPECT_EQ(f.library.partition.admissible_rms, (std::vector<std::string>{"M", "N"}));
  EXPECT_EQ(f.library.footprint(), (ResourceFootprint{1050, 867, 70, 1, 5}));
}

TEST(Library, SingleModulePartitionIsFootprintPlusMargin) {
  oracle::Rng rng(2);
  const auto lib = build_configuration_library(Device::zynq_7020(), kBase, {rm("A", rng.weights(4, "A"))});
  EXPECT_EQ(lib.partition.allocated, kPerCore + ResourceFootprint({4, 9, 0, 0, 0}));
}

TEST(Library, PartitionIsComponentWiseMaximumPlusMargin) {
  oracle::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ReconfigurableModule> mods;
    ResourceFootprint expected{};
    for (std::size_t k = 0, n = rng.index(1, 5); k < n; ++k) {
      ResourceFootprint fp{static_cast<std::int64_t>(rng.index(1, 2000)), static_cast<std::int64_t>(rng.index(0, 2000)),
                           static_cast<std::int64_t>(rng.index(0, 50)), static_cast<std::int64_t>(rng.index(0, 4)),
                           static_cast<std::int64_t>(rng.index(0, 20))};
      auto a = expected.as_array();
      const auto b = fp.as_array();
      for (std::size_t i = 0; i < 5; ++i) a[i] = std::max(a[i], b[i]);
      expected = ResourceFootprint::from_array(a);
      const auto name = "r" + std::to_string(k);
      mods.push_back(rm(name, rng.weights(3, name), fp));
    }
    const auto lib = build_configuration_library(Device::zynq_7020(), kBase, mods);
    EXPECT_EQ(lib.partition.allocated, expected + ResourceFootprint({4, 9, 0, 0, 0}));
  }
  const auto lib = build_configuration_library(
      Device::zynq_7020(), kBase,
      {rm("a", rng.weights(2, "a"), {10, 1, 0, 0, 0}), rm("b", rng.weights(2, "b"), {12, 1, 0, 0, 0})});
  EXPECT_EQ(lib.partition.allocated.slices, 12 + 4);
}

TEST(Library, Errors) {
  oracle::Rng rng(4);
  const auto w = rng.weights(3, "a");
  const auto dev = Device::zynq_7020();
  EXPECT_THROW(build_configuration_library(dev, kBase, {}), StructuralError);
  EXPECT_THROW(build_configuration_library(dev, kBase, {rm("a", w), rm("a", w)}), StructuralError);
  EXPECT_THROW(build_configuration_library(dev, kBase, {rm("a", w), rm("b", rng.weights(4, "b"))}), DimensionError);
  EXPECT_THROW(build_configuration_library(dev, kBase, {rm("a", w, {200000, 1, 0, 0, 0})}), CapacityError);
  EXPECT_THROW(build_configuration_library(dev, kBase, {rm("a", w, {})}), StructuralError);
  EXPECT_THROW(build_configuration_library(dev, kBase, {rm("a", rng.weights(113, "a"))}), DimensionError);
}

TEST(Configure, FullThenFull) {
  const auto f = two_modules();
  auto s = configured(f.library, "M");
  EXPECT_TRUE(s.static_loaded());
  EXPECT_EQ(s.rp_contents(), "M");
  EXPECT_EQ(s.events().size(), 1u);
  s = configure_full(std::move(s), f.library.full("N"), ConfigPort::jtag());
  EXPECT_EQ(s.rp_contents(), "N");
  EXPECT_EQ(s.events().size(), 2u);
}

TEST(Configure, DurationIsSizeOverRate) {
  const auto f = two_modules();
  const auto& bs = f.library.full("M");
  const auto s = configured(f.library);
  EXPECT_EQ(s.events()[0].duration, static_cast<double>(bs.size_bits) / 33.0e6);
  EXPECT_EQ(s.cumulative_config_time(), s.events()[0].duration);
  EXPECT_EQ(bs.size_bits, 400 * 106400);
}

TEST(Configure, FullErrors) {
  const auto f = two_modules();
  EXPECT_THROW(configure_full(DeviceState(f.library), f.library.partial("M"), ConfigPort::jtag()), ConfigurationError);
  auto wrong = f.library.full("M");
  wrong.target = "other";
  EXPECT_THROW(configure_full(DeviceState(f.library), wrong, ConfigPort::jtag()), ConfigurationError);
}

TEST(Reconfigure, PartialSwap) {
  const auto f = two_modules();
  auto s = configured(f.library);
  const auto base = s.register_base();
  s = reconfigure_partial(std::move(s), f.library.partial("N"), ConfigPort::jtag());
  EXPECT_EQ(s.rp_contents(), "N");
  EXPECT_TRUE(s.static_loaded());
  EXPECT_EQ(s.register_base(), base);
  EXPECT_EQ(s.events().back().kind, EventKind::configure_partial);
}

TEST(Reconfigure, Errors) {
  const auto f = two_modules();
  EXPECT_THROW(reconfigure_partial(DeviceState(f.library), f.library.partial("M"), ConfigPort::jtag()),
               ConfigurationError);
  auto s = configured(f.library);
  EXPECT_THROW(reconfigure_partial(s, f.library.full("N"), ConfigPort::jtag()), ConfigurationError);
  auto foreign = f.library.partial("N");
  foreign.rm_name = "Z";
  EXPECT_THROW(reconfigure_partial(s, foreign, ConfigPort::jtag()), ConfigurationError);
  auto other_rp = f.library.partial("N");
  other_rp.target = "rp9";
  EXPECT_THROW(reconfigure_partial(s, other_rp, ConfigPort::jtag()), ConfigurationError);
}

TEST(Reconfigure, RandomSwapSequencesReplayOracle) {
  oracle::Rng rng(50);
  std::vector<ReconfigurableModule> mods;
  for (int k = 0; k < 4; ++k) {
    const auto name = "r" + std::to_string(k);
    mods.push_back(rm(name, rng.weights(5, name)));
  }
  const auto lib = build_configuration_library(Device::zynq_7020(), kBase, mods);
  for (int trial = 0; trial < 50; ++trial) {
    const auto port = rng.coin() ? ConfigPort::jtag() : ConfigPort::pcap();
    std::string last = "r" + std::to_string(rng.index(0, 3));
    auto s = configure_full(DeviceState(lib), lib.full(last), port);
    double sum = static_cast<double>(lib.full(last).size_bits) / port.bits_per_second;
    for (std::size_t i = 0, n = rng.index(1, 30); i < n; ++i) {
      last = "r" + std::to_string(rng.index(0, 3));
      s = reconfigure_partial(std::move(s), lib.partial(last), port);
      sum += static_cast<double>(lib.partial(last).size_bits) / port.bits_per_second;
      if (rng.coin(0.3)) s = core_run(std::move(s), fv(rng.vector(5))).state;
      EXPECT_EQ(s.rp_contents(), last);
    }
    EXPECT_DOUBLE_EQ(s.cumulative_config_time(), sum);
    double logged = 0.0;
    for (const auto& e : s.events()) {
      if (e.kind != EventKind::run) logged += e.duration;
    }
    EXPECT_EQ(s.cumulative_config_time(), logged);
  }
}

TEST(ConfigTime, Properties) {
  const auto f = two_modules();
  auto zero = f.library.partial("M");
  zero.size_bits = 0;
  EXPECT_EQ(config_time(zero, ConfigPort::jtag()), 0.0);
  for (const auto& port : {ConfigPort::jtag(), ConfigPort::pcap()}) {
    for (const auto* name : {"M", "N"}) {
      EXPECT_LT(f.library.partial(name).size_bits, f.library.full(name).size_bits);
      EXPECT_LT(config_time(f.library.partial(name), port), config_time(f.library.full(name), port));
    }
  }
  const double partial = config_time(f.library.partial("M"), ConfigPort::jtag());
  EXPECT_GE(partial, 1e-3);
  EXPECT_LT(partial, 1e-2);
  EXPECT_EQ(f.library.partial("M").size_bits, 400 * 743);
}

TEST(CoreRun, MatchesSoftwareClassify) {
  oracle::Rng rng(7);
  const auto f = two_modules(7);
  auto s = configured(f.library);
  int positives = 0;
  for (int i = 0; i < 200; ++i) {
    const auto x = fv(rng.float_vector(27, -1, 1));
    auto r = core_run(std::move(s), x);
    s = std::move(r.state);
    const auto expected = svm::classify(f.m, x);
    EXPECT_EQ(r.outcome.label, expected.label);
    EXPECT_EQ(r.outcome.distance, expected.distance);
    EXPECT_EQ(static_cast<std::int32_t>(s.core().read(reg::result)), svm::to_int(expected.label));
    EXPECT_EQ(r.cycles, 148u);
    positives += expected.label == Label::positive;
  }
  EXPECT_GT(positives, 0);
  EXPECT_EQ(s.events().size(), 201u);
  EXPECT_EQ(s.rp_contents(), "M");
}

TEST(CoreRun, Errors) {
  const auto f = two_modules();
  EXPECT_THROW(core_run(DeviceState(f.library), fv(oracle::Vec(27, 0.0))), ConfigurationError);
  EXPECT_THROW(core_run(configured(f.library), fv({1, 2})), DimensionError);
}

TEST(CoreRun, StartWithoutFeaturesComputesOnZeros) {
  const auto f = two_modules();
  const auto r = core_start(configured(f.library));
  EXPECT_EQ(r.outcome.distance, -f.m.bias());
  EXPECT_EQ(r.outcome.label, svm::sign_label(-f.m.bias()));
}

TEST(Registers, InputWindowRoundTrip) {
  oracle::Rng rng(8);
  SvmCore core;
  core.load(rng.weights(27, "M"));
  EXPECT_EQ(core.read(reg::dim), 27u);
  EXPECT_EQ(core.read(reg::status) & reg::status_idle, reg::status_idle);
  std::vector<std::uint32_t> written;
  for (std::size_t j = 0; j < 27; ++j) {
    const auto word = static_cast<std::uint32_t>(rng.engine()());
    core.write(reg::input_base + j, word);
    written.push_back(word);
  }
  for (std::size_t j = 0; j < 27; ++j) EXPECT_EQ(core.read(reg::input_base + j), written[j]);
}

TEST(Registers, FloatBitsAndHostTransaction) {
  EXPECT_EQ(bits_float(float_bits(0.15625f)), 0.15625f);
  std::uint32_t one = 0;
  const float f1 = 1.0f;
  std::memcpy(&one, &f1, sizeof one);
  EXPECT_EQ(float_bits(1.0f), one);

  SvmCore core;
  core.load(oracle::artifact("w", {1, 0}, 2));
  const auto out = host_classify(core, fv({1, 0}));
  EXPECT_EQ(out.distance, -1.0);
  EXPECT_EQ(out.label, Label::negative);
  EXPECT_EQ(core.read(reg::ctrl) & reg::ctrl_start, 0u);
  EXPECT_EQ(core.read(reg::status) & reg::status_done, reg::status_done);
  std::uint64_t bits = core.read(reg::distance_lo) | (static_cast<std::uint64_t>(core.read(reg::distance_hi)) << 32);
  double d = 0;
  std::memcpy(&d, &bits, sizeof d);
  EXPECT_EQ(d, -1.0);
}

TEST(Registers, ReadOnlyAndUnmapped) {
  SvmCore core;
  core.load(oracle::artifact("w", {1}, 0));
  EXPECT_THROW(core.write(reg::result, 1), ConfigurationError);
  EXPECT_THROW(core.write(reg::status, 1), ConfigurationError);
  EXPECT_THROW(core.write(reg::map_words, 1), ConfigurationError);
  EXPECT_THROW((void)core.read(reg::map_words), ConfigurationError);
}

TEST(Registers, TimerWordsPresentOnlyWithTimer) {
  const auto f = two_modules();
  auto plain = configured(f.library);
  EXPECT_FALSE(plain.timer_cycles().has_value());
  DeviceState timed(f.library, CoreOptions{.timer = true});
  timed = configure_full(std::move(timed), f.library.full("M"), ConfigPort::jtag());
  auto r = core_run(std::move(timed), fv(oracle::Vec(27, 0.5)));
  ASSERT_TRUE(r.state.timer_cycles().has_value());
  const auto& core = r.state.core();
  const std::uint64_t counter = core.read(reg::timer_lo) | (static_cast<std::uint64_t>(core.read(reg::timer_hi)) << 32);
  EXPECT_EQ(counter, *r.state.timer_cycles());
  EXPECT_GT(counter, 0u);
}

TEST(Bitstreams, CanonicalRoundTrip) {
  const auto f = two_modules();
  for (const auto& bs : f.library.bitstreams) {
    const auto text = serialize_bitstream(bs);
    const auto back = parse_bitstream(text);
    EXPECT_EQ(back, bs);
    EXPECT_EQ(serialize_bitstream(back), text);
  }
  const std::string head =
      "bitstream v1\nkind partial\ntarget rp0\nrm M\nsize_bits 297200\nfootprint 743 629 2 1 5\n\nsvm-ac v1\n";
  EXPECT_EQ(serialize_bitstream(f.library.partial("M")).substr(0, head.size()), head);
}

TEST(Bitstreams, RejectsInconsistentSize) {
  const auto f = two_modules();
  auto text = serialize_bitstream(f.library.partial("M"));
  const auto pos = text.find("297200");
  text.replace(pos, 6, "297201");
  EXPECT_THROW(parse_bitstream(text), StructuralError);
  EXPECT_THROW(parse_bitstream("bitstream v2\n"), ParseError);
}

TEST(Dpr, AllPositiveStreamNeedsNoSwaps) {
  const auto f = two_modules();
  const cascade::CascadeSpec spec({{"M", oracle::artifact("M", oracle::Vec(27, 1.0), -1.0)},
                                   {"N", oracle::artifact("N", oracle::Vec(27, 1.0), 0.0)}});
  const auto lib = build_configuration_library(Device::zynq_7020(), kBase,
                                               {rm("M", spec.stage(1).weights), rm("N", spec.stage(2).weights)});
  std::vector<svm::FeatureVector> xs(20, fv(oracle::Vec(27, 0.25)));
  const auto r = dpr_cascade_run(configured(lib), lib, spec, xs, ConfigPort::jtag());
  EXPECT_TRUE(r.trace.swaps.empty());
  for (const auto& res : r.results) EXPECT_EQ(res.exit_stage, 1u);
}

TEST(Dpr, AlternatingStreamSwapCountMatchesTransitions) {
  const cascade::CascadeSpec spec({{"M", oracle::artifact("M", {1.0}, 0.0)}, {"N", oracle::artifact("N", {1.0}, 5.0)}});
  const auto lib = build_configuration_library(Device::zynq_7020(), kBase,
                                               {rm("M", spec.stage(1).weights), rm("N", spec.stage(2).weights)});
  for (std::size_t k : {1u, 5u, 20u}) {
    std::vector<svm::FeatureVector> xs;
    for (std::size_t i = 0; i < k; ++i) {
      xs.push_back(fv({1.0}));
      xs.push_back(fv({-1.0}));
    }
    const auto r = dpr_cascade_run(configured(lib), lib, spec, xs, ConfigPort::jtag(), SwapPolicy::lazy);
    EXPECT_LE(r.trace.swaps.size(), 2 * k);
    EXPECT_EQ(r.trace.swaps.size(), count_transitions(1, r.trace.stage_visits));
    EXPECT_EQ(r.trace.swaps.size(), 2 * k - 1);
  }
}

TEST(Dpr, ModeEquivalenceAndConservation) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    oracle::Rng rng(seed * 100);
    const auto f = two_modules(seed);
    const cascade::CascadeSpec spec({{"M", f.m}, {"N", f.n}});
    std::vector<svm::FeatureVector> xs;
    for (int i = 0; i < 300; ++i) xs.push_back(fv(rng.float_vector(27, -1, 1)));
    for (auto policy : {SwapPolicy::lazy, SwapPolicy::eager_restore}) {
      const auto start = configured(f.library);
      const double initial_config = start.cumulative_config_time();
      const auto r = dpr_cascade_run(start, f.library, spec, xs, ConfigPort::jtag(), policy);
      StaticCascadeSystem fixed(spec, 100e6);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        EXPECT_EQ(r.results[i], cascade::cascade_classify(spec, xs[i]));
        EXPECT_EQ(r.results[i], fixed.classify(xs[i]).result);
      }
      if (policy == SwapPolicy::lazy) {
        EXPECT_EQ(r.trace.swaps.size(), count_transitions(1, r.trace.stage_visits));
      } else {
        EXPECT_GE(r.trace.swaps.size(), count_transitions(1, r.trace.stage_visits));
      }
      double swap_sum = 0.0;
      for (const auto& s : r.trace.swaps) swap_sum += s.duration;
      EXPECT_EQ(r.trace.config_time, swap_sum);
      EXPECT_NEAR(r.state.cumulative_config_time(), initial_config + swap_sum, 1e-12);
      EXPECT_NEAR(r.trace.compute_time, static_cast<double>(r.trace.stage_visits.size()) * 1.48e-6, 1e-15);
    }
  }
}

TEST(Dpr, RejectsMismatchedLibraryAndUnconfiguredDevice) {
  const auto f = two_modules();
  oracle::Rng rng(9);
  const cascade::CascadeSpec other({{"M", rng.weights(27, "M")}, {"N", f.n}});
  std::vector<svm::FeatureVector> xs{fv(oracle::Vec(27, 0.0))};
  EXPECT_THROW(dpr_cascade_run(configured(f.library), f.library, other, xs, ConfigPort::jtag()), ConfigurationError);
  const cascade::CascadeSpec spec({{"M", f.m}, {"N", f.n}});
  EXPECT_THROW(dpr_cascade_run(DeviceState(f.library), f.library, spec, xs, ConfigPort::jtag()), ConfigurationError);
}

TEST(Dpr, CountTransitions) {
  const std::vector<std::size_t> v{1, 2, 1, 1, 2, 2, 1};
  EXPECT_EQ(count_transitions(1, v), 4u);
  EXPECT_EQ(count_transitions(2, v), 5u);
  EXPECT_EQ(count_transitions(1, std::span<const std::size_t>{}), 0u);
}

TEST(Dpr, SwapPolicyNames) {
  EXPECT_EQ(parse_swap_policy("lazy"), SwapPolicy::lazy);
  EXPECT_EQ(parse_swap_policy("eager"), SwapPolicy::eager_restore);
  EXPECT_EQ(to_string(SwapPolicy::eager_restore), "eager");
  EXPECT_THROW(parse_swap_policy("often"), ParseError);
}

TEST(EventTrace, OneLinePerEvent) {
  const auto f = two_modules();
  auto s = configured(f.library);
  s = reconfigure_partial(std::move(s), f.library.partial("N"), ConfigPort::jtag());
  s = core_run(std::move(s), fv(oracle::Vec(27, 0.0))).state;
  const auto trace = format_event_trace(s.events());
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 3);
  EXPECT_EQ(trace.substr(0, 24), "0.000000000 config-full ");
  EXPECT_NE(trace.find(" config-partial rm=N"), std::string::npos);
  EXPECT_NE(trace.find(" run rm=N"), std::string::npos);
}

TEST(StaticSystem, ElapsedAccumulatesCycles) {
  oracle::Rng rng(10);
  const cascade::CascadeSpec spec({{"a", oracle::artifact("a", {1.0}, 5.0)}, {"b", oracle::artifact("b", {1.0}, 5.0)}});
  StaticCascadeSystem sys(spec, 100e6);
  EXPECT_EQ(sys.size(), 2u);
  const auto run = sys.classify(fv({0.0}));
  EXPECT_EQ(run.result.exit_stage, 2u);
  EXPECT_EQ(run.cycles, 2 * perf::core_latency_cycles(1));
  EXPECT_DOUBLE_EQ(sys.elapsed(), perf::processing_time(run.cycles, 100e6));
}
