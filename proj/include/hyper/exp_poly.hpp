#pragma once

#include <cstddef>
#include <vector>

#include "hyper/core.hpp"
#include "hyper/polynomial.hpp"

namespace hyper {

/// One summand p(x) * exp(phi(x)).
struct ExpTerm {
  Polynomial poly;
  Covector exponent;
};

/// Exponential-polynomial f(x) = sum_i p_i(x) exp(phi_i(x)) on C^N.
///
/// Canonical form: exponents pairwise bit-distinct, no zero polynomial parts,
/// terms ordered by `exponent_less`. By the linear independence of
/// {e^phi : phi in E*} the canonical form of a function is unique, which is
/// what makes per-exponent operations (eigenvalues, the right inverse) well
/// defined. Every operation below returns canonical values.
class ExpPoly {
 public:
  explicit ExpPoly(std::size_t dimension = 1, NormTag tag = NormTag::L2);
  ExpPoly(std::size_t dimension, NormTag tag, std::vector<ExpTerm> terms);

  static ExpPoly zero(std::size_t dimension, NormTag tag) { return ExpPoly(dimension, tag); }
  /// c * e^phi.
  static ExpPoly exponential(const Covector& phi, Complex c = 1.0);
  /// p * e^0.
  static ExpPoly polynomial(const Polynomial& p, NormTag tag);

  std::size_t dimension() const { return dimension_; }
  NormTag norm_tag() const { return tag_; }
  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when every polynomial part is constant (f lies in span{e^phi}).
  bool is_pure_exponential() const;
  int max_degree() const;

  Complex operator()(const Point& x) const;

 private:
  std::size_t dimension_;
  NormTag tag_;
  std::vector<ExpTerm> terms_;
};

Complex eval(const ExpPoly& f, const Point& x);

/// Merges bit-identical exponents, drops zero polynomials, sorts terms.
ExpPoly canonicalize(const ExpPoly& f);

ExpPoly add(const ExpPoly& f, const ExpPoly& g);
ExpPoly subtract(const ExpPoly& f, const ExpPoly& g);
ExpPoly scale(const ExpPoly& f, Complex c);
ExpPoly multiply(const ExpPoly& f, const ExpPoly& g);

/// D_b(p e^phi) = (D_b p + phi(b) p) e^phi.
ExpPoly directional_derivative(const ExpPoly& f, const Point& b);

/// Exact coefficient-wise equality of canonical forms.
bool operator==(const ExpPoly& f, const ExpPoly& g);

/// Largest coefficient difference after aligning terms by exponent; exponents
/// present on one side only count with their full coefficient modulus.
double coefficient_distance(const ExpPoly& f, const ExpPoly& g);

}  // namespace hyper
