#include "hyper/operator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyper/errors.hpp"
#include "hyper/serialize.hpp"

namespace hyper {

namespace {

constexpr std::size_t kMaxSeriesTerms = 10000;

double falling_factorial(unsigned n, unsigned k) {
  double f = 1.0;
  for (unsigned i = 0; i < k; ++i) f *= static_cast<double>(n - i);
  return f;
}

double direction_scale(DirectionRule rule, std::size_t n) {
  switch (rule) {
    case DirectionRule::Const:
      return 1.0;
    case DirectionRule::Alternating:
      return n % 2 == 0 ? 1.0 : -1.0;
    case DirectionRule::Harmonic:
      return 1.0 + 1.0 / static_cast<double>(n + 1);
  }
  return 1.0;
}

double rule_sup(DirectionRule rule) { return rule == DirectionRule::Harmonic ? 2.0 : 1.0; }

std::string point_text(const Point& p) {
  std::string out;
  for (std::size_t j = 0; j < p.coords.size(); ++j) {
    out += (j ? ";" : "") + format_double(p.coords[j].real()) + "," + format_double(p.coords[j].imag());
  }
  return out;
}

// D_b^k p for k = 0..deg p.
std::vector<Polynomial> derivative_tower(const Polynomial& p, const Point& b) {
  std::vector<Polynomial> tower{p};
  const int d = p.degree();
  for (int k = 1; k <= d; ++k) tower.push_back(directional_derivative(tower.back(), b));
  return tower;
}

// Certified ||D_b^k p||_r for every b with ||b|| <= B:
// each D_b multiplies a coefficient by at most B |alpha| and lowers the degree.
double derivative_norm_bound(const Polynomial& p, unsigned k, double B, double r) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    const unsigned deg = alpha.degree();
    if (deg < k) continue;
    s += std::abs(c) * falling_factorial(deg, k) * ipow(B, k) * ipow(r, deg - k);
  }
  return s;
}

ExpPoly apply_single(const Symbol& phi, const Point& a, const ExpPoly& f, double tol,
                     const BallSpec& ball) {
  std::vector<ExpTerm> out;
  const std::size_t nterms = std::max<std::size_t>(1, f.terms().size());
  for (const auto& t : f.terms()) {
    const Complex lambda = pairing(t.exponent, a);
    const auto tower = derivative_tower(t.poly, a);
    const double exp_factor = std::exp(t.exponent.dual_norm() * ball.radius);
    Polynomial acc(f.dimension());
    double inv_fact = 1.0;
    for (std::size_t k = 0; k < tower.size(); ++k) {
      if (k > 0) inv_fact /= static_cast<double>(k);
      const double weight = tower[k].coefficient_norm(ball.radius) * exp_factor * inv_fact;
      const double tol_k = weight > 0.0
                               ? tol / (static_cast<double>(tower.size() * nterms) * weight)
                               : 1.0;
      const Approx d = eval_derivative(phi, static_cast<unsigned>(k), lambda, tol_k);
      acc += (d.value * inv_fact) * tower[k];
    }
    out.push_back(ExpTerm{std::move(acc), t.exponent});
  }
  return ExpPoly(f.dimension(), f.norm_tag(), std::move(out));
}

ExpPoly apply_varying(const VaryingOp& op, const ExpPoly& f, double tol, const BallSpec& ball) {
  const TypeCertificate cert = op.symbol.certificate();
  std::vector<ExpTerm> out;
  const std::size_t nterms = std::max<std::size_t>(1, f.terms().size());
  for (const auto& t : f.terms()) {
    const auto tower = derivative_tower(t.poly, op.base);
    const unsigned d = static_cast<unsigned>(tower.size() - 1);
    const Complex lambda0 = pairing(t.exponent, op.base);
    const double L = t.exponent.dual_norm() * op.bound;
    const double exp_factor = std::exp(t.exponent.dual_norm() * ball.radius);
    std::vector<double> norm_k(d + 1);
    for (unsigned k = 0; k <= d; ++k) {
      norm_k[k] = derivative_norm_bound(t.poly, k, op.bound, ball.radius);
    }
    const double tol_term = tol / static_cast<double>(nterms);

    // coef_k = sum_n c_n C(n,k) lambda_n^(n-k) s_n^k, with D_{b_n}^k p = s_n^k D_base^k p.
    std::vector<Complex> coef(d + 1, 0.0);
    bool done = false;
    for (std::size_t n = 0; n < kMaxSeriesTerms && !done; ++n) {
      const double s = direction_scale(op.rule, n);
      const Complex lambda = s * lambda0;
      const Complex cn = op.symbol.coeff(n);
      if (cn != 0.0) {
        for (unsigned k = 0; k <= std::min<std::size_t>(d, n); ++k) {
          double binom = 1.0;
          for (unsigned i = 0; i < k; ++i) binom = binom * static_cast<double>(n - i) / (i + 1);
          coef[k] += cn * binom * ipow(lambda, static_cast<unsigned>(n - k)) * ipow(s, k);
        }
      }
      // Remainder over m > n: sum_k N_k M R^k / k! tail(R L, n + 1 - k).
      double rest = 0.0;
      double inv_fact = 1.0;
      for (unsigned k = 0; k <= d; ++k) {
        if (k > 0) inv_fact /= k;
        const unsigned from = static_cast<unsigned>(n + 1 >= k ? n + 1 - k : 0);
        rest += norm_k[k] * cert.M * ipow(cert.R, k) * inv_fact * exp_tail(cert.R * L, from);
      }
      rest *= exp_factor;
      done = rest <= tol_term;
    }
    if (!done) throw ToleranceFailure("apply: varying-direction series did not reach tol");
    Polynomial acc(f.dimension());
    for (unsigned k = 0; k <= d; ++k) acc += coef[k] * tower[k];
    out.push_back(ExpTerm{std::move(acc), t.exponent});
  }
  return ExpPoly(f.dimension(), f.norm_tag(), std::move(out));
}

// Graded-lex basis of all monomials of degree <= d in n variables.
std::vector<MultiIndex> monomial_basis(std::size_t n, unsigned d) {
  std::vector<MultiIndex> basis;
  std::vector<unsigned> e(n, 0);
  // Enumerate exponent vectors with bounded entries and filter by degree.
  while (true) {
    MultiIndex m(e);
    if (m.degree() <= d) basis.push_back(m);
    std::size_t v = 0;
    while (v < n && e[v] == d) e[v++] = 0;
    if (v == n) break;
    ++e[v];
  }
  std::sort(basis.begin(), basis.end(), GradedLex{});
  return basis;
}

}  // namespace

DirectionRule parse_direction_rule(const std::string& name) {
  if (name == "const") return DirectionRule::Const;
  if (name == "alternating") return DirectionRule::Alternating;
  if (name == "harmonic") return DirectionRule::Harmonic;
  throw std::invalid_argument("unknown varying_rule '" + name + "'");
}

std::string to_string(DirectionRule rule) {
  switch (rule) {
    case DirectionRule::Const:
      return "const";
    case DirectionRule::Alternating:
      return "alternating";
    case DirectionRule::Harmonic:
      return "harmonic";
  }
  return "const";
}

Point VaryingOp::direction(std::size_t n) const { return direction_scale(rule, n) * base; }

OperatorSpec OperatorSpec::single(Symbol phi, Point a) {
  if (a.is_zero()) throw std::invalid_argument("operator: direction a must be nonzero");
  return OperatorSpec(SingleOp{std::move(phi), std::move(a)});
}

OperatorSpec OperatorSpec::multi(std::vector<std::pair<Symbol, Point>> parts) {
  if (parts.empty()) throw std::invalid_argument("operator: multi needs at least one part");
  const std::size_t n = parts.front().second.dimension();
  Eigen::MatrixXcd B(n, parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    require_same_dimension(n, parts[i].second.dimension(), "multi operator");
    if (parts[i].second.norm_tag != parts.front().second.norm_tag) {
      throw DimensionMismatch("multi operator: norm tag mismatch");
    }
    for (std::size_t j = 0; j < n; ++j) B(j, i) = parts[i].second.coords[j];
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(B);
  lu.setThreshold(1e-12);
  if (static_cast<std::size_t>(lu.rank()) != parts.size()) {
    throw std::invalid_argument("operator: multi directions must be linearly independent");
  }
  return OperatorSpec(MultiOp{std::move(parts)});
}

OperatorSpec OperatorSpec::varying(Symbol phi, Point base, DirectionRule rule, double bound) {
  if (base.is_zero()) throw std::invalid_argument("operator: varying base direction must be nonzero");
  const double needed = rule_sup(rule) * base.norm();
  if (bound <= 0.0) bound = needed;
  if (bound < needed * (1.0 - 1e-15)) {
    throw std::invalid_argument("operator: bound_B is below sup ||b_n||");
  }
  return OperatorSpec(VaryingOp{std::move(phi), std::move(base), rule, bound});
}

std::size_t OperatorSpec::dimension() const {
  return std::visit(
      [](const auto& op) -> std::size_t {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SingleOp>) return op.direction.dimension();
        else if constexpr (std::is_same_v<T, MultiOp>) return op.parts.front().second.dimension();
        else return op.base.dimension();
      },
      op_);
}

NormTag OperatorSpec::norm_tag() const {
  return std::visit(
      [](const auto& op) -> NormTag {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SingleOp>) return op.direction.norm_tag;
        else if constexpr (std::is_same_v<T, MultiOp>) return op.parts.front().second.norm_tag;
        else return op.base.norm_tag;
      },
      op_);
}

std::string OperatorSpec::describe() const {
  return std::visit(
      [](const auto& op) -> std::string {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SingleOp>) {
          return "single " + op.symbol.describe() + " a=" + point_text(op.direction);
        } else if constexpr (std::is_same_v<T, MultiOp>) {
          std::string out = "multi";
          for (const auto& [s, b] : op.parts) out += " [" + s.describe() + " b=" + point_text(b) + "]";
          return out;
        } else {
          return "varying " + op.symbol.describe() + " base=" + point_text(op.base) +
                 " rule=" + to_string(op.rule) + " B=" + format_double(op.bound);
        }
      },
      op_);
}

std::vector<std::pair<const Symbol*, const Point*>> OperatorSpec::directions() const {
  std::vector<std::pair<const Symbol*, const Point*>> out;
  if (const auto* s = std::get_if<SingleOp>(&op_)) out.emplace_back(&s->symbol, &s->direction);
  if (const auto* m = std::get_if<MultiOp>(&op_)) {
    for (const auto& [sym, b] : m->parts) out.emplace_back(&sym, &b);
  }
  if (const auto* v = std::get_if<VaryingOp>(&op_)) out.emplace_back(&v->symbol, &v->base);
  return out;
}

Approx eigenvalue(const OperatorSpec& op, const Covector& phi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("eigenvalue: tol must be positive");
  require_same_dimension(op.dimension(), phi.dimension(), "eigenvalue");
  const auto& v = op.variant();
  if (const auto* s = std::get_if<SingleOp>(&v)) {
    return eval_derivative(s->symbol, 0, pairing(phi, s->direction), tol);
  }
  if (const auto* m = std::get_if<MultiOp>(&v)) {
    Approx total{0.0, 0.0};
    const double share = tol / static_cast<double>(m->parts.size());
    for (const auto& [sym, b] : m->parts) {
      const Approx part = eval_derivative(sym, 0, pairing(phi, b), share);
      total.value += part.value;
      total.err += part.err;
    }
    return total;
  }
  const auto& op_v = std::get<VaryingOp>(v);
  const TypeCertificate cert = op_v.symbol.certificate();
  const Complex lambda0 = pairing(phi, op_v.base);
  const double L = phi.dual_norm() * op_v.bound;
  Complex g = 0.0;
  for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
    g += op_v.symbol.coeff(n) * ipow(direction_scale(op_v.rule, n) * lambda0, static_cast<unsigned>(n));
    // |c_m phi(b_m)^m| <= M (R L)^m / m!
    const double rest = cert.M * exp_tail(cert.R * L, static_cast<unsigned>(n + 1));
    if (rest <= tol) return {g, rest};
  }
  throw ToleranceFailure("eigenvalue: varying-direction series did not reach tol");
}

std::string to_string(Region region) {
  switch (region) {
    case Region::U:
      return "U";
    case Region::V:
      return "V";
    case Region::Boundary:
      return "BOUNDARY";
  }
  return "BOUNDARY";
}

Classification classify(const OperatorSpec& op, const Covector& phi, double margin, double tol) {
  if (!(margin > 0.0)) throw std::invalid_argument("classify: margin must be positive");
  if (!(tol < margin / 2)) throw std::invalid_argument("classify: tol must be < margin/2");
  const Approx g = eigenvalue(op, phi, tol);
  const double mod = std::abs(g.value);
  Region region = Region::Boundary;
  if (mod + g.err <= 1.0 - margin) region = Region::U;
  else if (mod - g.err >= 1.0 + margin) region = Region::V;
  return Classification{region, g.value, margin};
}

ExpPoly apply(const OperatorSpec& op, const ExpPoly& f, double tol, const BallSpec& ball) {
  require_same_dimension(op.dimension(), f.dimension(), "apply");
  const auto& v = op.variant();
  if (const auto* s = std::get_if<SingleOp>(&v)) return apply_single(s->symbol, s->direction, f, tol, ball);
  if (const auto* m = std::get_if<MultiOp>(&v)) {
    ExpPoly total = ExpPoly::zero(f.dimension(), f.norm_tag());
    const double share = tol / static_cast<double>(m->parts.size());
    for (const auto& [sym, b] : m->parts) total = add(total, apply_single(sym, b, f, share, ball));
    return total;
  }
  return apply_varying(std::get<VaryingOp>(v), f, tol, ball);
}

ExpPoly translate(const ExpPoly& f, const Point& a) {
  require_same_dimension(f.dimension(), a.dimension(), "translate");
  std::vector<ExpTerm> out;
  for (const auto& t : f.terms()) {
    out.push_back(ExpTerm{std::exp(pairing(t.exponent, a)) * shift_poly(t.poly, a), t.exponent});
  }
  return ExpPoly(f.dimension(), f.norm_tag(), std::move(out));
}

ExpPoly iterate(const OperatorSpec& op, const ExpPoly& f, std::size_t n, double tol,
                const BallSpec& ball) {
  if (n == 0) return f;
  const double step_tol = tol / static_cast<double>(n);
  std::vector<ExpTerm> out;
  for (const auto& t : f.terms()) {
    if (t.poly.is_constant()) {
      const Approx g = eigenvalue(op, t.exponent, step_tol);
      out.push_back(ExpTerm{ipow(g.value, static_cast<unsigned>(n)) * t.poly, t.exponent});
      continue;
    }
    // T preserves the exponent and maps degree <= d polynomials into themselves.
    const auto basis = monomial_basis(f.dimension(), static_cast<unsigned>(t.poly.degree()));
    const auto size = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(size, size);
    for (Eigen::Index col = 0; col < size; ++col) {
      const ExpPoly image = apply(
          op,
          ExpPoly(f.dimension(), f.norm_tag(), {ExpTerm{Polynomial::monomial(basis[col]), t.exponent}}),
          step_tol, ball);
      for (const auto& it : image.terms()) {
        for (Eigen::Index row = 0; row < size; ++row) A(row, col) = it.poly.coefficient(basis[row]);
      }
    }
    Eigen::VectorXcd x(size);
    for (Eigen::Index row = 0; row < size; ++row) x(row) = t.poly.coefficient(basis[row]);
    // Square-and-multiply on the vector.
    std::size_t e = n;
    Eigen::MatrixXcd P = A;
    while (e != 0) {
      if (e & 1u) x = P * x;
      e >>= 1;
      if (e != 0) P = P * P;
    }
    Polynomial p(f.dimension());
    for (Eigen::Index row = 0; row < size; ++row) p.add_term(basis[row], x(row));
    out.push_back(ExpTerm{std::move(p), t.exponent});
  }
  return ExpPoly(f.dimension(), f.norm_tag(), std::move(out));
}

ExpPoly apply_inverse(const OperatorSpec& op, const ExpPoly& f, double margin, std::size_t power,
                      double tol) {
  std::vector<ExpTerm> out;
  for (const auto& t : f.terms()) {
    if (!t.poly.is_constant()) {
      throw PreconditionError("apply_inverse: non-constant polynomial part (outside span{e^psi})");
    }
    const Classification c = classify(op, t.exponent, margin, tol);
    if (c.region != Region::V) throw PreconditionError("apply_inverse: exponent not in V");
    const Complex coef = t.poly.constant_term() / ipow(c.g, static_cast<unsigned>(power));
    out.push_back(ExpTerm{Polynomial::constant(f.dimension(), coef), t.exponent});
  }
  return ExpPoly(f.dimension(), f.norm_tag(), std::move(out));
}

GrowthBound growth_bound(const OperatorSpec& op, std::size_t n, const BallSpec& ball) {
  const auto* s = std::get_if<SingleOp>(&op.variant());
  if (!s) throw std::invalid_argument("growth_bound: single-direction operators only");
  if (n == 0) return {1.0, ball.radius};
  const TypeCertificate cert = s->symbol.certificate();
  const double rho = 2.0 * cert.R;
  const double C = cert.M / (1.0 - cert.R / rho);
  return {C, ball.radius + rho * static_cast<double>(n) * s->direction.norm()};
}

ExpPoly apply_by_series(const Symbol& phi, const Point& a, const ExpPoly& f, std::size_t terms) {
  ExpPoly total = ExpPoly::zero(f.dimension(), f.norm_tag());
  ExpPoly derivative = f;
  for (std::size_t n = 0; n <= terms; ++n) {
    total = add(total, scale(derivative, phi.coeff(n)));
    derivative = directional_derivative(derivative, a);
  }
  return total;
}

}  // namespace hyper
