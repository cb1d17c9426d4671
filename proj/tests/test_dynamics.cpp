#include <cmath>

#include <gtest/gtest.h>

#include "hyper/dynamics.hpp"
#include "hyper/errors.hpp"
#include "hyper/serialize.hpp"
#include "support.hpp"

namespace hyper {
namespace {

using testing::cov;
using testing::monomial_fn;

OperatorSpec translation() { return OperatorSpec::single(Symbol::exp(), Point({1.0})); }
OperatorSpec derivative() { return OperatorSpec::single(Symbol::poly({0.0, 1.0}), Point({1.0})); }
ExpPoly zero1() { return ExpPoly::zero(1, NormTag::L2); }
const BallSpec kBall(1.0);

ExpPoly one_plus_z() { return add(monomial_fn({0}), monomial_fn({1})); }

TEST(Witness, TranslationToSquare) {
  const Witness w = transitivity_witness(translation(), zero1(), monomial_fn({2}), 0.1, kBall);
  EXPECT_GE(w.n, 1u);
  EXPECT_LE(w.n, 60u);
  EXPECT_LT(w.src_error, 0.1);
  EXPECT_LT(w.tgt_error, 0.1);
  EXPECT_GE(w.certified_src, w.src_error);
  EXPECT_GE(w.certified_tgt, w.tgt_error);
  EXPECT_TRUE(w.x0.terms.empty());
}

TEST(Witness, DerivativeToAffine) {
  const Witness w = transitivity_witness(derivative(), zero1(), one_plus_z(), 0.2, kBall);
  EXPECT_LT(w.src_error, 0.2);
  EXPECT_LT(w.tgt_error, 0.2);
  // Re-check at 4x the sampling density of the construction.
  const SamplerConfig dense(4 * 256, 1234);
  EXPECT_LT(sup_lower(w.z, kBall, dense), 0.2);
  EXPECT_LT(sup_lower(subtract(iterate(derivative(), w.z, w.n), one_plus_z()), kBall, dense), 0.2);
}

TEST(Witness, CollapseOnExactExponential) {
  const RegionBall rb = find_region_point(translation(), Region::V, 0.2, 8);
  const ExpPoly target = ExpPoly::exponential(rb.center);
  const Witness w = transitivity_witness(translation(), zero1(), target, 0.1, kBall);
  EXPECT_TRUE(w.x0.terms.empty());
  ASSERT_EQ(w.y0.terms.size(), 1u);
  EXPECT_TRUE(bit_equal(w.y0.terms[0].exponent, rb.center));
  const double g = std::abs(eigenvalue(translation(), rb.center).value);
  const double e = std::exp(rb.center.dual_norm());
  EXPECT_LE(std::pow(g, -static_cast<double>(w.n)) * e, 0.1 / 3);
  EXPECT_GT(std::pow(g, -static_cast<double>(w.n - 1)) * e, 0.1 / 3);
  EXPECT_LT(coefficient_distance(iterate(translation(), w.z, w.n), target), 1e-12);
}

TEST(Witness, AlgebraicIdentity) {
  const Witness w = transitivity_witness(translation(), monomial_fn({1}), monomial_fn({2}), 0.2, kBall);
  const ExpPoly x0 = w.x0.to_exp_poly(1, NormTag::L2);
  const ExpPoly y0 = w.y0.to_exp_poly(1, NormTag::L2);
  const ExpPoly lhs = subtract(iterate(translation(), w.z, w.n), y0);
  EXPECT_LT(coefficient_distance(lhs, iterate(translation(), x0, w.n)), 1e-10);
}

TEST(Witness, DecayBoundsStrictlyDecrease) {
  const Witness w = transitivity_witness(translation(), monomial_fn({1}), monomial_fn({2}), 0.2, kBall);
  ASSERT_FALSE(w.x0.terms.empty());
  ASSERT_FALSE(w.y0.terms.empty());
  for (std::size_t n = 1; n < 50; ++n) {
    EXPECT_LT(forward_decay_bound(translation(), w.x0, n + 1, kBall), forward_decay_bound(translation(), w.x0, n, kBall));
    EXPECT_LT(backward_decay_bound(translation(), w.y0, n + 1, kBall), backward_decay_bound(translation(), w.y0, n, kBall));
  }
}

TEST(Witness, Deterministic) {
  const Witness a = transitivity_witness(derivative(), monomial_fn({1}), one_plus_z(), 0.2, kBall);
  const Witness b = transitivity_witness(derivative(), monomial_fn({1}), one_plus_z(), 0.2, kBall);
  EXPECT_EQ(to_text(a.z), to_text(b.z));
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.src_error, b.src_error);
  EXPECT_EQ(a.tgt_error, b.tgt_error);
}

TEST(Witness, NMaxIsASearchFailure) {
  WitnessConfig cfg;
  cfg.n_max = 2;
  EXPECT_THROW(transitivity_witness(translation(), zero1(), monomial_fn({2}), 0.1, kBall, cfg), SearchFailure);
}

TEST(Tour, SingleConstantTarget) {
  const Tour t = orbit_tour(translation(), {monomial_fn({0})}, 0.2, kBall);
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_TRUE(t.complete);
  EXPECT_LT(t.visit_errors[0], 0.2);
}

TEST(Tour, ZeroTarget) {
  const Tour t = orbit_tour(translation(), {zero1()}, 0.2, kBall);
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_LT(t.visit_errors[0], 0.2);
}

TEST(Tour, TimesIncreaseAndFailureIsReported) {
  const std::vector<ExpPoly> targets = {monomial_fn({2}), one_plus_z(), ExpPoly::exponential(cov({-1.0}))};
  const Tour t = run_tour(translation(), targets, 0.2, kBall);
  const auto times = t.times();
  for (std::size_t i = 1; i < times.size(); ++i) EXPECT_GT(times[i], times[i - 1]);
  EXPECT_EQ(t.complete, t.steps.size() == targets.size());
  EXPECT_EQ(t.complete, t.failure.empty());
  EXPECT_EQ(t.visit_errors.size(), t.steps.size());
}

TEST(Tour, Deterministic) {
  const std::vector<ExpPoly> targets = {monomial_fn({2}), one_plus_z()};
  const Tour a = run_tour(derivative(), targets, 0.2, kBall);
  const Tour b = run_tour(derivative(), targets, 0.2, kBall);
  EXPECT_EQ(to_text(a.h), to_text(b.h));
  EXPECT_EQ(a.times(), b.times());
  EXPECT_EQ(a.visit_errors, b.visit_errors);
}

TEST(CriterionReport, TranslationRatios) {
  const CriterionReport rep = criterion_report(translation(), kBall, WitnessConfig());
  ASSERT_GE(rep.curves.size(), 2u);
  for (const auto& c : rep.curves) {
    ASSERT_EQ(c.certified.size(), 50u);
    const double expect = c.inverse ? 1.0 / std::abs(c.g) : std::abs(c.g);
    EXPECT_LT(expect, 1.0);
    for (double r : c.ratios) EXPECT_NEAR(r, expect, 1e-10);
    for (std::size_t i = 0; i < c.sampled.size(); ++i) EXPECT_LE(c.sampled[i], c.certified[i]);
  }
  EXPECT_LE(rep.identity_defect, 1e-10);
}

TEST(CriterionReport, ExtraCovectorRatio) {
  const CriterionReport rep = criterion_report(derivative(), kBall, WitnessConfig(), 50, {cov({0.5})});
  bool found = false;
  for (const auto& c : rep.curves) {
    if (c.label != "T_extra1") continue;
    found = true;
    for (double r : c.ratios) EXPECT_NEAR(r, 0.5, 1e-12);
  }
  EXPECT_TRUE(found);
}

}  // namespace
}  // namespace hyper
