#include "hyper/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyper/errors.hpp"

namespace hyper {

unsigned MultiIndex::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0u);
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exponents < b.exponents;
}

Polynomial::Polynomial(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0) throw std::invalid_argument("Polynomial: dimension must be >= 1");
}

Polynomial Polynomial::constant(std::size_t n, Complex c) {
  Polynomial p(n);
  p.add_term(MultiIndex::zero(n), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t n, std::size_t j) {
  MultiIndex alpha = MultiIndex::zero(n);
  alpha.exponents.at(j) = 1;
  return monomial(alpha);
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, Complex c) {
  Polynomial p(alpha.dimension());
  p.add_term(alpha, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  // Graded order: the last key has maximal degree.
  return static_cast<int>(terms_.rbegin()->first.degree());
}

Complex Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

Complex Polynomial::constant_term() const { return coefficient(MultiIndex::zero(dimension_)); }

void Polynomial::add_term(const MultiIndex& alpha, Complex c) {
  require_same_dimension(dimension_, alpha.dimension(), "Polynomial::add_term");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Complex Polynomial::operator()(const Point& x) const {
  require_same_dimension(dimension_, x.dimension(), "Polynomial eval");
  Complex sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    Complex m = c;
    for (std::size_t j = 0; j < dimension_; ++j) {
      for (unsigned e = 0; e < alpha[j]; ++e) m *= x.coords[j];
    }
    sum += m;
  }
  return sum;
}

double Polynomial::coefficient_norm(double radius) const {
  double s = 0.0;
  for (const auto& [alpha, c] : terms_) s += std::abs(c) * ipow(radius, alpha.degree());
  return s;
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  require_same_dimension(dimension_, q.dimension_, "Polynomial +");
  for (const auto& [alpha, c] : q.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  require_same_dimension(dimension_, q.dimension_, "Polynomial -");
  for (const auto& [alpha, c] : q.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(Complex c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    // Underflow can produce an exact zero.
    it = it->second == 0.0 ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
Polynomial operator*(Complex c, Polynomial p) { return p *= c; }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  require_same_dimension(p.dimension(), q.dimension(), "Polynomial *");
  Polynomial out(p.dimension());
  for (const auto& [a, ca] : p.terms()) {
    for (const auto& [b, cb] : q.terms()) {
      MultiIndex s = a;
      for (std::size_t j = 0; j < s.exponents.size(); ++j) s.exponents[j] += b[j];
      out.add_term(s, ca * cb);
    }
  }
  return out;
}

bool operator==(const Polynomial& p, const Polynomial& q) {
  return p.dimension() == q.dimension() && p.terms() == q.terms();
}

Polynomial partial(const Polynomial& p, std::size_t j) {
  Polynomial out(p.dimension());
  for (const auto& [alpha, c] : p.terms()) {
    if (alpha[j] == 0) continue;
    MultiIndex beta = alpha;
    beta.exponents[j] -= 1;
    out.add_term(beta, c * static_cast<double>(alpha[j]));
  }
  return out;
}

Polynomial directional_derivative(const Polynomial& p, const Point& b) {
  require_same_dimension(p.dimension(), b.dimension(), "directional_derivative");
  Polynomial out(p.dimension());
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    if (b.coords[j] == 0.0) continue;
    out += b.coords[j] * partial(p, j);
  }
  return out;
}

namespace {

// (x_j + a)^e as a polynomial in x_j.
Polynomial shifted_power(std::size_t n, std::size_t j, Complex a, unsigned e) {
  Polynomial out(n);
  double binom = 1.0;
  for (unsigned i = 0; i <= e; ++i) {
    MultiIndex alpha = MultiIndex::zero(n);
    alpha.exponents[j] = i;
    // C(e, i) a^(e-i)
    out.add_term(alpha, binom * ipow(a, e - i));
    binom = binom * static_cast<double>(e - i) / static_cast<double>(i + 1);
  }
  return out;
}

}  // namespace

Polynomial shift_poly(const Polynomial& p, const Point& a) {
  require_same_dimension(p.dimension(), a.dimension(), "shift_poly");
  const std::size_t n = p.dimension();
  Polynomial out(n);
  for (const auto& [alpha, c] : p.terms()) {
    Polynomial term = Polynomial::constant(n, c);
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha[j] == 0) continue;
      if (a.coords[j] == 0.0) {
        MultiIndex xj = MultiIndex::zero(n);
        xj.exponents[j] = alpha[j];
        term = term * Polynomial::monomial(xj);
      } else {
        term = term * shifted_power(n, j, a.coords[j], alpha[j]);
      }
    }
    out += term;
  }
  return out;
}

}  // namespace hyper
