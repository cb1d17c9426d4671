#pragma once

#include <cstdint>
#include <vector>

#include "hyper/exp_poly.hpp"
#include "hyper/rng.hpp"

namespace hyper::testing {

/// Draws from one counter stream; each call advances the counter.
class Draw {
 public:
  explicit Draw(std::uint64_t seed, std::uint64_t stream = 0) : rng_(seed, stream) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(counter_++); }
  Complex complex(double scale) { return {uniform(-scale, scale), uniform(-scale, scale)}; }
  unsigned below(unsigned n) { return static_cast<unsigned>(rng_.bits(counter_++) % n); }

  Point point(std::size_t n, double max_norm, NormTag tag = NormTag::L2) {
    std::vector<Complex> c(n);
    for (auto& z : c) z = complex(1.0);
    Point p(c, tag);
    const double s = uniform(0.1, 1.0) * max_norm / p.norm();
    return s * p;
  }

  Covector covector(std::size_t n, double max_norm, NormTag space = NormTag::L2) {
    std::vector<Complex> c(n);
    for (auto& z : c) z = complex(1.0);
    Covector phi = Covector::for_space(c, space);
    const double s = uniform(0.1, 1.0) * max_norm / phi.dual_norm();
    return s * phi;
  }

  Polynomial polynomial(std::size_t n, unsigned max_degree, unsigned terms) {
    Polynomial p(n);
    for (unsigned t = 0; t < terms; ++t) {
      MultiIndex alpha = MultiIndex::zero(n);
      const unsigned deg = below(max_degree + 1);
      for (unsigned d = 0; d < deg; ++d) alpha.exponents[below(static_cast<unsigned>(n))] += 1;
      p.add_term(alpha, complex(1.0));
    }
    if (p.is_zero()) p.add_term(MultiIndex::zero(n), 1.0);
    return p;
  }

  ExpPoly exp_poly(std::size_t n, unsigned terms, unsigned max_degree, double max_phi,
                   NormTag tag = NormTag::L2) {
    std::vector<ExpTerm> out;
    for (unsigned t = 0; t < terms; ++t) {
      out.push_back({polynomial(n, max_degree, 1 + below(3)), covector(n, max_phi, tag)});
    }
    return ExpPoly(n, tag, std::move(out));
  }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

inline ExpPoly monomial_fn(std::vector<unsigned> alpha, Complex c = 1.0, NormTag tag = NormTag::L2) {
  return ExpPoly::polynomial(Polynomial::monomial(MultiIndex(std::move(alpha)), c), tag);
}

inline Covector cov(std::vector<Complex> c, NormTag space = NormTag::L2) {
  return Covector::for_space(std::move(c), space);
}

}  // namespace hyper::testing
