#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "hyper/core.hpp"
#include "hyper/polynomial.hpp"

namespace hyper {

using Rational = boost::multiprecision::cpp_rational;

/// weight * psi(x)^power with psi an integer combination of coordinate
/// functionals.
struct PolarTerm {
  Rational exact_weight;
  double weight = 0.0;
  std::vector<long long> direction;
  unsigned power = 0;

  Covector psi(NormTag space) const;
};

/// Writes the monomial x^alpha (|alpha| = k >= 1) as a combination of k-th
/// powers of linear functionals using
///
///   z_1 ... z_k = 1/(2^k k!) sum_{eps in {+-1}^k} (prod eps_j) (sum eps_j z_j)^k
///
/// with z_j running over the coordinates of alpha with multiplicity. Sign
/// patterns are grouped per coordinate, each direction is reduced to a
/// primitive integer vector with positive leading entry, and equal directions
/// are merged. Weights are exact rationals.
std::vector<PolarTerm> polarize(const MultiIndex& alpha);

/// Expands sum_i w_i psi_i^k back into a polynomial with exact rational
/// coefficients (multi-index -> coefficient). Used to check `polarize`.
std::map<std::vector<unsigned>, Rational> expand_exact(const std::vector<PolarTerm>& terms,
                                                       std::size_t dimension);

}  // namespace hyper
