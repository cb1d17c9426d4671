#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hyper/errors.hpp"
#include "hyper/operator.hpp"
#include "support.hpp"

namespace hyper {
namespace {

using testing::cov;
using testing::Draw;
using testing::monomial_fn;

const double kE = std::exp(1.0);

OperatorSpec translation(std::vector<Complex> a) { return OperatorSpec::single(Symbol::exp(), Point(std::move(a))); }
OperatorSpec derivative() { return OperatorSpec::single(Symbol::poly({0.0, 1.0}), Point({1.0})); }

ExpPoly zero_of(std::size_t n) { return ExpPoly::zero(n, NormTag::L2); }

TEST(OperatorSpec, Validation) {
  EXPECT_THROW(OperatorSpec::single(Symbol::exp(), Point({0.0, 0.0})), std::invalid_argument);
  EXPECT_THROW(OperatorSpec::multi({{Symbol::exp(), Point({1.0, 2.0})}, {Symbol::exp(), Point({2.0, 4.0})}}),
               std::invalid_argument);
  EXPECT_THROW(OperatorSpec::varying(Symbol::exp(), Point({1.0}), DirectionRule::Harmonic, 1.5),
               std::invalid_argument);
  EXPECT_NO_THROW(OperatorSpec::varying(Symbol::exp(), Point({1.0}), DirectionRule::Harmonic, 2.0));
}

TEST(Eigenvalue, WorkedExamples) {
  const Approx a = eigenvalue(translation({1.0}), cov({-1.0}));
  EXPECT_NEAR(a.value.real(), std::exp(-1.0), 1e-15);
  EXPECT_EQ(a.err, 0.0);
  EXPECT_EQ(eigenvalue(derivative(), cov({2.0})).value, Complex(2.0));
}

TEST(Eigenvalue, MultiAgainstBruteForceSeries) {
  const OperatorSpec op = OperatorSpec::multi({{Symbol::exp(), Point({1.0, 0.0})}, {Symbol::exp(), Point({0.0, 1.0})}});
  const Approx g = eigenvalue(op, cov({1.0, -1.0}));
  long double s1 = 0.0L, s2 = 0.0L, term1 = 1.0L, term2 = 1.0L;
  for (int n = 0; n < 200; ++n) {
    s1 += term1;
    s2 += term2;
    term1 *= 1.0L / (n + 1);
    term2 *= -1.0L / (n + 1);
  }
  EXPECT_NEAR(g.value.real(), static_cast<double>(s1 + s2), 1e-12);
  EXPECT_NEAR(g.value.real(), 3.086161, 1e-6);
}

TEST(Eigenvalue, MultiIsSumOfSingles) {
  Draw d(51);
  const Symbol s1 = Symbol::exp(), s2 = Symbol::poly({1.0, 0.0, 1.0});
  const Point b1({1.0, 0.5}), b2({0.0, Complex(0, 1)});
  const OperatorSpec op = OperatorSpec::multi({{s1, b1}, {s2, b2}});
  for (int i = 0; i < 50; ++i) {
    const Covector phi = d.covector(2, 2.0);
    const Complex sum = eigenvalue(OperatorSpec::single(s1, b1), phi).value + eigenvalue(OperatorSpec::single(s2, b2), phi).value;
    EXPECT_EQ(eigenvalue(op, phi).value, sum);
  }
}

TEST(Eigenvalue, ConstantVaryingMatchesSingle) {
  Draw d(52);
  const Point a({0.5, 1.0});
  const OperatorSpec v = OperatorSpec::varying(Symbol::exp(), a, DirectionRule::Const);
  for (int i = 0; i < 30; ++i) {
    const Covector phi = d.covector(2, 2.0);
    const Approx g = eigenvalue(v, phi, 1e-12);
    EXPECT_LE(std::abs(g.value - eigenvalue(translation({0.5, 1.0}), phi).value), g.err + 1e-13);
  }
}

TEST(Classify, WorkedExamples) {
  const OperatorSpec op = translation({1.0});
  EXPECT_EQ(classify(op, cov({-1.0}), 0.1).region, Region::U);
  EXPECT_EQ(classify(op, cov({1.0}), 0.1).region, Region::V);
  EXPECT_EQ(classify(op, cov({Complex(0, std::numbers::pi)}), 0.1).region, Region::Boundary);
  EXPECT_THROW(classify(op, cov({1.0}), 0.1, 0.06), std::invalid_argument);
}

TEST(Apply, WorkedExamples) {
  EXPECT_EQ(apply(derivative(), monomial_fn({3})), monomial_fn({2}, 3.0));

  ExpPoly shifted = add(add(monomial_fn({2}), monomial_fn({1}, 2.0)), monomial_fn({0}));
  EXPECT_LT(coefficient_distance(apply(translation({1.0}), monomial_fn({2})), shifted), 1e-14);

  const ExpPoly zexp(1, NormTag::L2, {{Polynomial::variable(1, 0), cov({2.0})}});
  Polynomial zp1 = Polynomial::variable(1, 0);
  zp1.add_term(MultiIndex({0}), 1.0);
  const ExpPoly expect(1, NormTag::L2, {{Complex(std::exp(2.0)) * zp1, cov({2.0})}});
  EXPECT_LT(coefficient_distance(apply(translation({1.0}), zexp), expect), 1e-13);
}

TEST(Apply, EigenRelation) {
  Draw d(53);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + d.below(3);
    const Symbol s = i % 2 ? Symbol::exp() : Symbol::poly({d.complex(1.0), d.complex(1.0), d.complex(1.0)});
    const OperatorSpec op = OperatorSpec::single(s, d.point(n, 1.0));
    const Covector phi = d.covector(n, 2.0);
    const ExpPoly out = apply(op, ExpPoly::exponential(phi));
    ASSERT_EQ(out.terms().size(), 1u);
    EXPECT_TRUE(out.terms()[0].poly.is_constant());
    EXPECT_LT(std::abs(out.terms()[0].poly.constant_term() - eigenvalue(op, phi).value), 1e-12);
  }
}

TEST(Apply, ClosedFormMatchesDefiningSeries) {
  Draw d(54);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 1 + d.below(2);
    const Symbol s = i % 3 == 0 ? Symbol::exp() : i % 3 == 1 ? Symbol::scaled_exp(d.complex(1.0)) : Symbol::poly({1.0, 2.0, 0.5});
    const Point a = d.point(n, 1.0);
    const ExpPoly f = d.exp_poly(n, 2, 3, 1.0);
    const ExpPoly closed = apply(OperatorSpec::single(s, a), f);
    const ExpPoly series = apply_by_series(s, a, f, 60);
    EXPECT_LT(coefficient_distance(closed, series), 1e-10 * std::max(1.0, sup_upper(f, BallSpec(1.0))));
  }
}

TEST(Apply, TranslationIdentity) {
  Draw d(55);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + d.below(3);
    const ExpPoly f = d.exp_poly(n, 1 + d.below(3), 4, 2.0);
    const Point a = d.point(n, 1.0);
    const ExpPoly diff = subtract(apply(OperatorSpec::single(Symbol::exp(), a), f), translate(f, a));
    EXPECT_LE(sup_lower(diff, BallSpec(1.0), SamplerConfig(256, i)), 1e-8 * sup_upper(f, BallSpec(3.0)));
  }
}

TEST(Translate, WorkedExamples) {
  const Complex lambda(0.5, 1.0), b(0.25, -1.0);
  const ExpPoly e = ExpPoly::exponential(cov({lambda}));
  EXPECT_EQ(translate(e, Point({b})), ExpPoly::exponential(cov({lambda}), std::exp(lambda * b)));
  const ExpPoly x1ex2(2, NormTag::L2, {{Polynomial::variable(2, 0), cov({0.0, 1.0})}});
  EXPECT_LT(coefficient_distance(translate(x1ex2, Point({0.0, 1.0})), scale(x1ex2, kE)), 1e-15);
}

TEST(Iterate, WorkedExamples) {
  const Complex lambda(0.3, 0.2);
  const ExpPoly e = ExpPoly::exponential(cov({lambda}));
  EXPECT_LT(coefficient_distance(iterate(translation({1.0}), e, 5), scale(e, std::exp(5.0 * lambda))), 1e-14);
  const ExpPoly f = monomial_fn({3});
  EXPECT_EQ(iterate(derivative(), f, 0), f);
  EXPECT_EQ(iterate(derivative(), f, 2), monomial_fn({1}, 6.0));
}

TEST(Iterate, Semigroup) {
  Draw d(56);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 1 + d.below(2);
    const OperatorSpec op = OperatorSpec::single(i % 2 ? Symbol::exp() : Symbol::poly({0.5, 1.0}), d.point(n, 1.0));
    const ExpPoly f = d.exp_poly(n, 2, 3, 0.5);
    const std::size_t m = d.below(5), k = d.below(5);
    const ExpPoly lhs = iterate(op, f, m + k);
    const ExpPoly rhs = iterate(op, iterate(op, f, m), k);
    EXPECT_LT(coefficient_distance(lhs, rhs), 1e-10 * std::max(1.0, sup_upper(lhs, BallSpec(1.0))));
  }
}

TEST(Iterate, MatchesRepeatedApply) {
  Draw d(57);
  const OperatorSpec op = OperatorSpec::varying(Symbol::exp(), Point({1.0}), DirectionRule::Harmonic);
  const ExpPoly f = d.exp_poly(1, 2, 2, 0.5);
  ExpPoly g = f;
  for (int i = 0; i < 4; ++i) g = apply(op, g, 1e-14);
  EXPECT_LT(coefficient_distance(iterate(op, f, 4), g), 1e-10);
}

TEST(Iterate, DecayInUAndInverseDecayInV) {
  const OperatorSpec op = translation({1.0});
  const double mu = 0.2;
  Draw d(58);
  for (int i = 0; i < 20; ++i) {
    const Covector phi = cov({Complex(d.uniform(-2.0, std::log(1 - mu)), d.uniform(-3, 3))});
    ASSERT_EQ(classify(op, phi, mu).region, Region::U);
    const Covector psi = cov({Complex(d.uniform(std::log(1 + mu), 2.0), d.uniform(-3, 3))});
    ASSERT_EQ(classify(op, psi, mu).region, Region::V);
    for (std::size_t n = 1; n < 30; n += 7) {
      EXPECT_LE(std::abs(iterate(op, ExpPoly::exponential(phi), n).terms()[0].poly.constant_term()),
                std::pow(1 - mu, n) * (1 + 1e-12));
      EXPECT_LE(std::abs(apply_inverse(op, ExpPoly::exponential(psi), mu, n).terms()[0].poly.constant_term()),
                std::pow(1 + mu, -static_cast<double>(n)) * (1 + 1e-12));
    }
  }
}

TEST(ApplyInverse, WorkedExamples) {
  const OperatorSpec op = translation({1.0});
  EXPECT_LT(coefficient_distance(apply_inverse(op, ExpPoly::exponential(cov({1.0})), 0.1),
                                 ExpPoly::exponential(cov({1.0}), 1 / kE)),
            1e-16);
  const ExpPoly f = add(ExpPoly::exponential(cov({1.0}), 2.0), ExpPoly::exponential(cov({2.0}), 3.0));
  const ExpPoly expect = add(ExpPoly::exponential(cov({1.0}), 2.0 / kE), ExpPoly::exponential(cov({2.0}), 3.0 / (kE * kE)));
  EXPECT_LT(coefficient_distance(apply_inverse(op, f, 0.1), expect), 1e-15);
  EXPECT_THROW(apply_inverse(op, ExpPoly::exponential(cov({-1.0})), 0.1), PreconditionError);
  EXPECT_THROW(apply_inverse(op, monomial_fn({1}), 0.1), PreconditionError);
}

TEST(ApplyInverse, RightInverseOnVSpans) {
  Draw d(59);
  const OperatorSpec op = translation({1.0, 0.0});
  for (int i = 0; i < 100; ++i) {
    std::vector<ExpTerm> terms;
    for (int t = 0; t < 3; ++t) {
      terms.push_back({Polynomial::constant(2, d.complex(2.0)), cov({Complex(d.uniform(0.3, 2.0), d.uniform(-3, 3)), d.complex(1.0)})});
    }
    const ExpPoly y(2, NormTag::L2, std::move(terms));
    EXPECT_LT(coefficient_distance(apply(op, apply_inverse(op, y, 0.2)), y), 1e-10);
  }
}

TEST(GrowthBound, WorkedExamples) {
  const GrowthBound g1 = growth_bound(translation({1.0}), 1, BallSpec(1.0));
  EXPECT_EQ(g1.C, 2.0);
  EXPECT_EQ(g1.inflated_radius, 3.0);
  const GrowthBound g0 = growth_bound(translation({1.0}), 0, BallSpec(1.0));
  EXPECT_EQ(g0.C, 1.0);
  EXPECT_EQ(g0.inflated_radius, 1.0);

  const ExpPoly f = monomial_fn({2});
  const double lhs = sup_lower(apply(translation({1.0}), f), BallSpec(1.0), SamplerConfig(4096, 1));
  EXPECT_LE(lhs, g1.C * sup_upper(f, BallSpec(g1.inflated_radius)));
}

}  // namespace
}  // namespace hyper
