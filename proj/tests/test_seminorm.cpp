#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hyper/seminorm.hpp"
#include "support.hpp"

namespace hyper {
namespace {

using testing::cov;
using testing::Draw;
using testing::monomial_fn;

// Independent scalar oracle: max of |h| over a uniform grid of |z| = r.
template <typename F>
double circle_max(F h, double r, int points) {
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const Complex z = std::polar(r, 2.0 * std::numbers::pi * i / points);
    best = std::max(best, std::abs(h(z)));
  }
  return best;
}

TEST(SphereSamples, UnimodularAndDeterministic) {
  const SamplerConfig cfg(4, 99);
  const auto a = sphere_samples(1, BallSpec(1.0), cfg);
  const auto b = sphere_samples(1, BallSpec(1.0), cfg);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(std::abs(a[i].coords[0]), 1.0, 1e-15);
    EXPECT_EQ(a[i].coords, b[i].coords);
  }
}

TEST(SphereSamples, OnTheSphereForEveryNorm) {
  for (auto tag : {NormTag::L1, NormTag::L2, NormTag::LInf}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (const Point& x : sphere_samples(n, BallSpec(2.0, tag), SamplerConfig(300, 3))) {
        EXPECT_NEAR(x.norm(), 2.0, 1e-12);
        EXPECT_EQ(x.norm_tag, tag);
      }
    }
  }
}

TEST(SphereSamples, PrefixProperty) {
  const auto small = sphere_samples(3, BallSpec(1.0), SamplerConfig(10, 5));
  const auto large = sphere_samples(3, BallSpec(1.0), SamplerConfig(50, 5));
  for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small[i].coords, large[i].coords);
}

TEST(SupLower, WorkedExamples) {
  const ExpPoly one = ExpPoly::polynomial(Polynomial::constant(2, 1.0), NormTag::L2);
  EXPECT_DOUBLE_EQ(sup_lower(one, BallSpec(3.0), SamplerConfig(8, 1)), 1.0);
  EXPECT_NEAR(sup_lower(monomial_fn({1}), BallSpec(1.0), SamplerConfig(1000, 1)), 1.0, 1e-12);
  EXPECT_NEAR(sup_lower(monomial_fn({2}), BallSpec(2.0), SamplerConfig(1000, 1)), 4.0, 1e-12);
}

TEST(SupLower, SerialAndParallelAgreeExactly) {
  Draw d(31);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 1 + d.below(3);
    const ExpPoly f = d.exp_poly(n, 3, 3, 2.0);
    const SamplerConfig cfg(1000 + 37 * i, i);
    EXPECT_EQ(sup_lower(f, BallSpec(1.5), cfg), sup_lower_serial(f, BallSpec(1.5), cfg));
  }
}

TEST(SupLower, MonotoneInSampleCount) {
  Draw d(32);
  for (int i = 0; i < 20; ++i) {
    const ExpPoly f = d.exp_poly(2, 2, 3, 1.0);
    double prev = 0.0;
    for (std::size_t count : {1, 4, 16, 64, 256, 1024}) {
      const double v = sup_lower(f, BallSpec(1.0), SamplerConfig(count, 77));
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(SupUpper, WorkedExamples) {
  EXPECT_DOUBLE_EQ(sup_upper(ExpPoly::exponential(cov({1.0})), BallSpec(1.0)) / (1 + 1e-13), std::exp(1.0));
  EXPECT_EQ(sup_upper(subtract(monomial_fn({1}), monomial_fn({1})), BallSpec(1.0)), 0.0);

  const ExpPoly zez(1, NormTag::L2, {{Polynomial::variable(1, 0), cov({1.0})}});
  const double upper = sup_upper(zez, BallSpec(1.0));
  EXPECT_NEAR(upper, std::exp(1.0), 1e-12);
  EXPECT_NEAR(sup_lower(zez, BallSpec(1.0), SamplerConfig(20000, 4)), std::exp(1.0), 1e-6);
}

TEST(SupUpper, UsesTheDualNormOfTheBall) {
  // phi = (1, 1) on an L1 ball of radius 1: |phi(x)| <= max|phi_j| = 1.
  const ExpPoly f = ExpPoly::exponential(Covector::for_space({1.0, 1.0}, NormTag::L1));
  EXPECT_NEAR(sup_upper(f, BallSpec(1.0, NormTag::L1)), std::exp(1.0), 1e-12);
  EXPECT_NEAR(sup_upper(f, BallSpec(1.0, NormTag::LInf)), std::exp(2.0), 1e-12);
}

TEST(SupUpper, LowerNeverExceedsUpper) {
  Draw d(33);
  for (auto tag : {NormTag::L1, NormTag::L2, NormTag::LInf}) {
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 1 + d.below(3);
      const ExpPoly f = d.exp_poly(n, 1 + d.below(3), 4, 2.0, tag);
      const BallSpec ball(d.uniform(0.5, 3.0), tag);
      EXPECT_LE(sup_lower(f, ball, SamplerConfig(512, i)), sup_upper(f, ball));
    }
  }
}

TEST(SupUpper, HomogeneousAndSubadditive) {
  Draw d(34);
  for (int i = 0; i < 100; ++i) {
    const ExpPoly f = d.exp_poly(2, 3, 3, 2.0);
    const ExpPoly g = d.exp_poly(2, 3, 3, 2.0);
    const BallSpec ball(1.0);
    const Complex c = d.complex(3.0);
    EXPECT_NEAR(sup_upper(scale(f, c), ball), std::abs(c) * sup_upper(f, ball), 1e-12 * sup_upper(scale(f, c), ball));
    EXPECT_LE(sup_upper(add(f, g), ball), (sup_upper(f, ball) + sup_upper(g, ball)) * (1 + 1e-12));
  }
}

TEST(Distance, WorkedExamples) {
  const SamplerConfig cfg(10000, 8);
  const BallSpec ball(1.0);
  const ExpPoly z = monomial_fn({1});
  EXPECT_EQ(distance(z, z, ball, cfg).sampled_lower, 0.0);
  EXPECT_NEAR(distance(z, ExpPoly::zero(1, NormTag::L2), ball, cfg).sampled_lower, 1.0, 1e-9);

  ExpPoly taylor = ExpPoly::polynomial(Polynomial::constant(1, 1.0), NormTag::L2);
  taylor = add(taylor, z);
  taylor = add(taylor, monomial_fn({2}, 0.5));
  const Distance dist = distance(ExpPoly::exponential(cov({1.0})), taylor, ball, cfg);
  const double oracle = circle_max([](Complex w) { return std::exp(w) - 1.0 - w - 0.5 * w * w; }, 1.0, 100000);
  // The maximum sits at z = 1, where the remainder is e - 5/2.
  EXPECT_NEAR(oracle, std::exp(1.0) - 2.5, 1e-12);
  EXPECT_NEAR(dist.sampled_lower, oracle, 1e-6);
  EXPECT_LE(dist.sampled_lower, dist.certified_upper);
}

}  // namespace
}  // namespace hyper
