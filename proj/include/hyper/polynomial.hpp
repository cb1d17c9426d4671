#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <vector>

#include "hyper/core.hpp"

namespace hyper {

/// Exponent vector alpha of a monomial x^alpha.
struct MultiIndex {
  std::vector<unsigned> exponents;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> e) : exponents(std::move(e)) {}
  static MultiIndex zero(std::size_t n) { return MultiIndex(std::vector<unsigned>(n, 0)); }

  std::size_t dimension() const { return exponents.size(); }
  unsigned degree() const;
  unsigned operator[](std::size_t j) const { return exponents[j]; }

  bool operator==(const MultiIndex&) const = default;
};

/// Graded-lexicographic order: total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Sparse polynomial on C^N with complex coefficients. Zero coefficients are
/// never stored.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, Complex, GradedLex>;

  explicit Polynomial(std::size_t dimension = 1);

  static Polynomial constant(std::size_t n, Complex c);
  static Polynomial variable(std::size_t n, std::size_t j);
  static Polynomial monomial(const MultiIndex& alpha, Complex c = 1.0);

  std::size_t dimension() const { return dimension_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// -1 for the zero polynomial.
  int degree() const;
  Complex coefficient(const MultiIndex& alpha) const;
  /// Constant coefficient, i.e. p(0).
  Complex constant_term() const;

  /// Adds c to the coefficient of x^alpha, dropping it if it becomes exactly 0.
  void add_term(const MultiIndex& alpha, Complex c);

  Complex operator()(const Point& x) const;

  /// sum_alpha |c_alpha| r^|alpha|, an upper bound of sup_{|x_j| <= r} |p|.
  double coefficient_norm(double radius) const;

  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(Complex c);

 private:
  std::size_t dimension_;
  TermMap terms_;
};

Polynomial operator+(Polynomial p, const Polynomial& q);
Polynomial operator-(Polynomial p, const Polynomial& q);
Polynomial operator*(Complex c, Polynomial p);
Polynomial operator*(const Polynomial& p, const Polynomial& q);
bool operator==(const Polynomial& p, const Polynomial& q);

/// d/dx_j.
Polynomial partial(const Polynomial& p, std::size_t j);
/// D_b p = sum_j b_j d/dx_j p.
Polynomial directional_derivative(const Polynomial& p, const Point& b);
/// Exact expansion of x -> p(x + a).
Polynomial shift_poly(const Polynomial& p, const Point& a);

}  // namespace hyper
