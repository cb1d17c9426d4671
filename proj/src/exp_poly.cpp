#include "hyper/exp_poly.hpp"

#include <algorithm>
#include <cmath>

#include "hyper/errors.hpp"

namespace hyper {

namespace {

// -0.0 and +0.0 describe the same functional; fold them so bit equality
// agrees with numeric equality on zero components.
Covector fold_signed_zeros(Covector phi) {
  for (auto& c : phi.coords) {
    double re = c.real() == 0.0 ? 0.0 : c.real();
    double im = c.imag() == 0.0 ? 0.0 : c.imag();
    c = Complex(re, im);
  }
  return phi;
}

void check_compatible(const ExpPoly& f, const ExpPoly& g, const char* what) {
  require_same_dimension(f.dimension(), g.dimension(), what);
  if (f.norm_tag() != g.norm_tag()) throw DimensionMismatch(std::string(what) + ": norm tag mismatch");
}

}  // namespace

ExpPoly::ExpPoly(std::size_t dimension, NormTag tag) : dimension_(dimension), tag_(tag) {
  if (dimension_ == 0) throw std::invalid_argument("ExpPoly: dimension must be >= 1");
}

ExpPoly::ExpPoly(std::size_t dimension, NormTag tag, std::vector<ExpTerm> terms)
    : ExpPoly(dimension, tag) {
  std::vector<ExpTerm> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    require_same_dimension(dimension_, t.poly.dimension(), "ExpPoly term polynomial");
    require_same_dimension(dimension_, t.exponent.dimension(), "ExpPoly term exponent");
    t.exponent = fold_signed_zeros(std::move(t.exponent));
    t.exponent.norm_tag = dual(tag_);
    merged.push_back(std::move(t));
  }
  std::stable_sort(merged.begin(), merged.end(), [](const ExpTerm& a, const ExpTerm& b) {
    return exponent_less(a.exponent, b.exponent);
  });
  for (auto& t : merged) {
    if (!terms_.empty() && bit_equal(terms_.back().exponent, t.exponent)) {
      terms_.back().poly += t.poly;
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const ExpTerm& t) { return t.poly.is_zero(); });
}

ExpPoly ExpPoly::exponential(const Covector& phi, Complex c) {
  const std::size_t n = phi.dimension();
  return ExpPoly(n, phi.space_tag(), {ExpTerm{Polynomial::constant(n, c), phi}});
}

ExpPoly ExpPoly::polynomial(const Polynomial& p, NormTag tag) {
  const std::size_t n = p.dimension();
  return ExpPoly(n, tag, {ExpTerm{p, Covector::zero(n, tag)}});
}

bool ExpPoly::is_pure_exponential() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const ExpTerm& t) { return t.poly.is_constant(); });
}

int ExpPoly::max_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.poly.degree());
  return d;
}

Complex ExpPoly::operator()(const Point& x) const {
  require_same_dimension(dimension_, x.dimension(), "ExpPoly eval");
  Complex sum = 0.0;
  for (const auto& t : terms_) sum += t.poly(x) * std::exp(pairing(t.exponent, x));
  return sum;
}

Complex eval(const ExpPoly& f, const Point& x) { return f(x); }

ExpPoly canonicalize(const ExpPoly& f) {
  // The constructor already canonicalizes.
  return ExpPoly(f.dimension(), f.norm_tag(), f.terms());
}

ExpPoly add(const ExpPoly& f, const ExpPoly& g) {
  check_compatible(f, g, "add");
  std::vector<ExpTerm> terms = f.terms();
  terms.insert(terms.end(), g.terms().begin(), g.terms().end());
  return ExpPoly(f.dimension(), f.norm_tag(), std::move(terms));
}

ExpPoly subtract(const ExpPoly& f, const ExpPoly& g) { return add(f, scale(g, -1.0)); }

ExpPoly scale(const ExpPoly& f, Complex c) {
  std::vector<ExpTerm> terms = f.terms();
  for (auto& t : terms) t.poly *= c;
  return ExpPoly(f.dimension(), f.norm_tag(), std::move(terms));
}

ExpPoly multiply(const ExpPoly& f, const ExpPoly& g) {
  check_compatible(f, g, "multiply");
  std::vector<ExpTerm> terms;
  terms.reserve(f.terms().size() * g.terms().size());
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      terms.push_back(ExpTerm{a.poly * b.poly, a.exponent + b.exponent});
    }
  }
  return ExpPoly(f.dimension(), f.norm_tag(), std::move(terms));
}

ExpPoly directional_derivative(const ExpPoly& f, const Point& b) {
  require_same_dimension(f.dimension(), b.dimension(), "directional_derivative");
  std::vector<ExpTerm> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    Polynomial p = directional_derivative(t.poly, b);
    p += pairing(t.exponent, b) * t.poly;
    terms.push_back(ExpTerm{std::move(p), t.exponent});
  }
  return ExpPoly(f.dimension(), f.norm_tag(), std::move(terms));
}

bool operator==(const ExpPoly& f, const ExpPoly& g) {
  if (f.dimension() != g.dimension() || f.terms().size() != g.terms().size()) return false;
  for (std::size_t i = 0; i < f.terms().size(); ++i) {
    if (!bit_equal(f.terms()[i].exponent, g.terms()[i].exponent)) return false;
    if (!(f.terms()[i].poly == g.terms()[i].poly)) return false;
  }
  return true;
}

double coefficient_distance(const ExpPoly& f, const ExpPoly& g) {
  const ExpPoly d = subtract(f, g);
  double worst = 0.0;
  for (const auto& t : d.terms()) {
    for (const auto& [alpha, c] : t.poly.terms()) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

}  // namespace hyper
