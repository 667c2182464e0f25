#include <gtest/gtest.h>

#include "dprsvm/errors.hpp"
#include "dprsvm/svm/decision.hpp"
#include "oracles.hpp"

using namespace dprsvm;
using namespace dprsvm::svm;
using oracle::fv;

namespace {

SvmModel one_sv(double coeff, const std::vector<double>& x, double bias) {
  return SvmModel("m", static_cast<Index>(x.size()), bias, {SupportVector(coeff, fv(x))});
}

}  // namespace

TEST(AccumulateWeights, SingleTermSum) {
  const auto w = accumulate_weights(one_sv(1.0, {2, 3}, 0.0));
  EXPECT_EQ(oracle::to_vec(w.ac()), (oracle::Vec{2, 3}));
  EXPECT_EQ(w.bias(), 0.0);
}

TEST(AccumulateWeights, OppositeCoefficientsCancel) {
  const SvmModel m("m", 2, 0.0, {SupportVector(1.0, fv({5, 7})), SupportVector(-1.0, fv({5, 7}))});
  EXPECT_EQ(oracle::to_vec(accumulate_weights(m).ac()), (oracle::Vec{0, 0}));
}

TEST(AccumulateWeights, MatchesComponentSummationOracleExactly) {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = rng.model(3, 5);
    const auto expected = oracle::accumulate(oracle::plain(m));
    const auto w = accumulate_weights(m);
    EXPECT_EQ(oracle::to_vec(w.ac()), expected);
    EXPECT_EQ(w.bias(), m.bias());
  }
}

TEST(AccumulateWeights, MismatchedSupportVectorIsStructuralError) {
  try {
    SvmModel("m", 2, 0.0, {SupportVector(1.0, fv({1, 2})), SupportVector(1.0, fv({1, 2, 3}))});
    FAIL();
  } catch (const StructuralError& e) {
    EXPECT_NE(std::string(e.what()).find("support vector 1"), std::string::npos);
  }
}

TEST(DecisionValue, HandArithmetic) {
  EXPECT_EQ(decision_value(oracle::artifact("w", {1, 0}, 2), fv({1, 0}), Precision::double_precision), -1.0);
}

TEST(DecisionValue, ZeroWeightsGiveZero) {
  oracle::Rng rng(3);
  const auto w = oracle::artifact("w", oracle::Vec(6, 0.0), 0.0);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(decision_value<double>(w, fv(rng.vector(6, -100, 100))), 0.0);
}

TEST(DecisionValue, MatchesDotProductOracle) {
  oracle::Rng rng(27);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ac = rng.vector(27, -5, 5);
    const double bias = rng.uniform(-3, 3);
    const auto x = rng.vector(27, -5, 5);
    const double expected = oracle::distance(ac, bias, x);
    const double got = decision_value<double>(oracle::artifact("w", ac, bias), fv(x));
    EXPECT_LE(std::abs(got - expected), 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST(DecisionValue, DimensionMismatchThrows) {
  EXPECT_THROW(decision_value<double>(oracle::artifact("w", {1, 2}, 0), fv({1, 2, 3})), DimensionError);
  EXPECT_THROW(classify(oracle::artifact("w", {1, 2}, 0), fv({1})), DimensionError);
}

TEST(Classify, ZeroDistanceIsPositive) {
  const auto out = classify(oracle::artifact("w", {1}, 1.0), fv({1}));
  EXPECT_EQ(out.distance, 0.0);
  EXPECT_EQ(out.label, Label::positive);
}

TEST(Classify, NegativeDistance) {
  const auto out = classify(oracle::artifact("w", {1, 0}, 2), fv({1, 0}));
  EXPECT_EQ(out.distance, -1.0);
  EXPECT_EQ(out.label, Label::negative);
}

TEST(Classify, LabelAgreesWithOracleSignOutsideGuardBand) {
  oracle::Rng rng(200);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto ac = rng.vector(9);
    const double bias = rng.uniform(-1, 1);
    const auto x = rng.vector(9);
    const double d = oracle::distance(ac, bias, x);
    const auto out = classify(oracle::artifact("w", ac, bias), fv(x));
    EXPECT_EQ(out.label == Label::positive, out.distance >= 0.0);
    if (std::abs(d) > 1e-9 * (1 + oracle::norm(x) * oracle::norm(ac))) {
      EXPECT_EQ(out.label, d >= 0 ? Label::positive : Label::negative);
      ++checked;
    }
  }
  EXPECT_GT(checked, 190);
}

TEST(ClassifyDirect, SingleSupportVector) {
  const auto out = classify_direct(one_sv(1.0, {1, 1}, 0.0), fv({1, 1}));
  EXPECT_EQ(out.distance, 2.0);
  EXPECT_EQ(out.label, Label::positive);
}

TEST(ClassifyDirect, MatchesExtendedPrecisionOracle) {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = rng.model(rng.index(1, 20), rng.index(1, 40));
    const auto x = rng.vector(static_cast<std::size_t>(m.dimension()));
    const double expected = oracle::direct_distance(oracle::plain(m), x);
    EXPECT_NEAR(classify_direct(m, fv(x)).distance, expected, 1e-9 * (1 + std::abs(expected)));
  }
}

TEST(ClassifyDirect, BiasAboveAttainableSumRejectsWholeBox) {
  // On the box [0,1]^d the kernel sum is at most sum_j max(0, ac_j).
  oracle::Rng rng(17);
  const std::size_t dim = 3;
  auto m = rng.model(dim, 8);
  const auto ac = oracle::accumulate(oracle::plain(m));
  double bound = 0.0;
  for (double a : ac) bound += std::max(0.0, a);
  const SvmModel high(m.name(), m.dimension(), bound + 1.0, m.support_vectors());

  for (unsigned corner = 0; corner < (1u << dim); ++corner) {
    oracle::Vec x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = (corner >> j) & 1u ? 1.0 : 0.0;
    EXPECT_EQ(classify_direct(high, fv(x)).label, Label::negative);
  }
  for (int i = 0; i < 2000; ++i) EXPECT_EQ(classify_direct(high, fv(rng.vector(dim, 0, 1))).label, Label::negative);
}

TEST(Properties, FactorizationEquivalence) {
  oracle::Rng rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = rng.model(rng.index(1, 64), rng.index(1, 200));
    const auto w = accumulate_weights(m);
    const auto x = rng.vector(static_cast<std::size_t>(m.dimension()));
    const auto direct = classify_direct(m, fv(x));
    const auto fact = classify(w, fv(x));
    EXPECT_LE(std::abs(direct.distance - fact.distance), 1e-6 * (1 + std::abs(direct.distance)));
    if (std::abs(direct.distance) > 1e-9 * (1 + oracle::norm(x) * oracle::norm(oracle::to_vec(w.ac())))) {
      EXPECT_EQ(direct.label, fact.label);
    }
  }
}

TEST(Properties, SinglePrecisionEquivalenceWithinRelaxedTolerance) {
  oracle::Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = rng.model(27, rng.index(1, 150));
    const auto x = rng.vector(27);
    const auto direct = classify_direct(m, fv(x), Precision::double_precision);
    const auto single = classify(accumulate_weights(m, Precision::single_precision), fv(x), Precision::single_precision);
    EXPECT_LE(std::abs(direct.distance - single.distance), 1e-4 * (1 + std::abs(direct.distance)));
  }
}

TEST(Properties, SignRuleHoldsForBothPaths) {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = rng.model(4, 3);
    const auto x = fv(rng.vector(4));
    for (const auto& out : {classify(accumulate_weights(m), x), classify_direct(m, x)}) {
      EXPECT_EQ(out.label == Label::positive, out.distance >= 0.0);
    }
  }
}

TEST(Properties, LinearityOverConcatenatedSupportVectors) {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = rng.model(5, rng.index(1, 10));
    const auto b = rng.model(5, rng.index(1, 10));
    auto svs = a.support_vectors();
    svs.insert(svs.end(), b.support_vectors().begin(), b.support_vectors().end());
    const SvmModel joined("j", 5, 0.0, svs);
    const auto wa = accumulate_weights(a).ac();
    const auto wb = accumulate_weights(b).ac();
    const auto wj = accumulate_weights(joined).ac();
    for (Index j = 0; j < 5; ++j) EXPECT_NEAR(wj[j], wa[j] + wb[j], 1e-12 * (1 + std::abs(wj[j])));
  }
}

TEST(Properties, PositiveScalingScalesDistanceAndKeepsLabel) {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = rng.model(6, 4);
    const double c = rng.uniform(0.1, 10);
    std::vector<SupportVector> scaled;
    for (const auto& sv : m.support_vectors()) scaled.emplace_back(c * sv.coefficient, sv.features);
    const SvmModel ms("s", 6, c * m.bias(), scaled);
    const auto x = fv(rng.vector(6));
    const auto d = classify_direct(m, x);
    const auto ds = classify_direct(ms, x);
    EXPECT_NEAR(ds.distance, c * d.distance, 1e-9 * (1 + std::abs(c * d.distance)));
    if (std::abs(d.distance) > 1e-9) EXPECT_EQ(ds.label, d.label);
  }
}

TEST(Types, InvariantsRejectBadValues) {
  EXPECT_THROW(FeatureVector(std::vector<double>{}), DimensionError);
  EXPECT_THROW(FeatureVector(std::vector<double>{1.0, std::nan("")}), StructuralError);
  EXPECT_THROW(SupportVector(0.0, fv({1})), StructuralError);
  EXPECT_THROW(SupportVector(INFINITY, fv({1})), StructuralError);
  EXPECT_THROW(SvmModel("m", 1, 0.0, {}), StructuralError);
  EXPECT_THROW(SvmModel("m", 1, NAN, {SupportVector(1.0, fv({1}))}), StructuralError);
  EXPECT_THROW(oracle::artifact("w", {1.0, INFINITY}, 0), StructuralError);
  EXPECT_THROW(oracle::artifact("bad name", {1.0}, 0), StructuralError);
}
