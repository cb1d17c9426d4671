#include "hyper/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "hyper/errors.hpp"
#include "hyper/polarize.hpp"

namespace hyper {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
constexpr double kTFloor = 1e-8;
constexpr double kEigenTol = 1e-14;
// Slack kept between the certified eigenvalue range and the region threshold,
// so that the floating-point re-check in classify() sees the same answer.
constexpr double kClassifySlack = 1e-12;
constexpr unsigned kMaxRotations = 256;

double dnorm(const Covector& phi, const BallSpec& ball) {
  return vector_norm(phi.coords, dual(ball.norm_tag));
}

// sum_s w_s e^{s phi} for a fixed phi; s is a complex scalar.
struct ScalarCombo {
  std::map<std::pair<double, double>, Complex> weights;
  double err = 0.0;
  double mass = 0.0;
  double t = 0.0;

  void add(Complex s, Complex w) { weights[{s.real(), s.imag()}] += w; }
};

class PowerBuilder {
 public:
  PowerBuilder(double rho_r, PowerMode mode, const DensityConfig& cfg)
      : rho_r_(rho_r), mode_(mode), cfg_(cfg) {}

  ScalarCombo build(unsigned k, double eps, double t0) {
    return mode_ == PowerMode::Rotated ? rotated(k, eps, t0) : recursive(k, eps, t0);
  }

 private:
  const ScalarCombo& cached(unsigned j, double eps) {
    auto& slot = cache_[j];
    const ScalarCombo* best = nullptr;
    for (const auto& c : slot) {
      if (c.err <= eps && (best == nullptr || c.mass < best->mass)) best = &c;
    }
    if (best != nullptr) return *best;
    slot.push_back(recursive(j, eps, cfg_.t_start));
    return slot.back();
  }

  ScalarCombo recursive(unsigned k, double eps, double t0) {
    const double gamma = 32.0 * (k + 1) * kUnitRoundoff;
    for (double t = t0; t >= kTFloor; t /= 2) {
      const double tk = ipow(t, k);
      const double trunc = exp_tail(t * rho_r_, k + 1) / tk;
      if (trunc > eps) continue;

      ScalarCombo out;
      out.t = t;
      out.add(t, 1.0 / tk);
      out.add(0.0, -1.0 / tk);
      double mass = (std::exp(t * rho_r_) + 1.0) / tk;
      double err = trunc;
      for (unsigned j = 1; j < k; ++j) {
        const double scale = ipow(t, k - j);
        const ScalarCombo& child = cached(j, eps * scale / (k + 1));
        for (const auto& [s, w] : child.weights) out.add({s.first, s.second}, -w / scale);
        mass += child.mass / scale;
        err += child.err / scale;
      }
      const double rounding = gamma * mass;
      out.mass = mass;
      out.err = err + rounding;
      if (out.err <= eps) return out;
      if (rounding > eps) break;
    }
    throw ToleranceFailure("approx_power: tolerance " + std::to_string(eps) + " not reachable for k=" +
                           std::to_string(k));
  }

  ScalarCombo rotated(unsigned k, double eps, double t0) {
    for (double t = t0; t >= kTFloor; t /= 2) {
      const double tk = ipow(t, k);
      const double mass = std::exp(t * rho_r_) / tk;
      for (unsigned P = k + 1; P <= k + kMaxRotations; ++P) {
        const double trunc = exp_tail(t * rho_r_, k + P) / tk;
        const double rounding = 32.0 * (k + P) * kUnitRoundoff * mass;
        if (rounding > eps) break;
        if (trunc + rounding > eps) continue;
        ScalarCombo out;
        out.t = t;
        for (unsigned p = 0; p < P; ++p) {
          const double angle = 2.0 * std::numbers::pi * p / P;
          const Complex w = std::polar(1.0 / (P * tk), -angle * k);
          out.add(std::polar(t, angle), w);
        }
        out.mass = mass;
        out.err = trunc + rounding;
        return out;
      }
    }
    throw ToleranceFailure("approx_power: tolerance " + std::to_string(eps) + " not reachable for k=" +
                           std::to_string(k));
  }

  double rho_r_;
  PowerMode mode_;
  DensityConfig cfg_;
  std::map<unsigned, std::vector<ScalarCombo>> cache_;
};

struct CovectorLess {
  bool operator()(const Covector& a, const Covector& b) const { return exponent_less(a, b); }
};

ExpCombo finish(const std::map<Covector, Complex, CovectorLess>& acc, double err, double mass,
                const BallSpec& ball) {
  ExpCombo out;
  out.ball = ball;
  out.certified_error = err;
  out.mass = mass;
  for (const auto& [phi, w] : acc) {
    if (w != Complex(0.0)) out.terms.push_back({w, phi});
  }
  return out;
}

// Covectors phi(lambda) = lambda * u for the scan, one u per family.
std::vector<Covector> scan_directions(const OperatorSpec& op) {
  const NormTag space = op.norm_tag();
  const std::size_t n = op.dimension();
  auto along = [&](const Point& a) {
    double s = 0.0;
    for (const auto& c : a.coords) s += std::norm(c);
    std::vector<Complex> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::conj(a.coords[i]) / s;
    return Covector::for_space(std::move(u), space);
  };
  const auto& v = op.variant();
  if (const auto* s = std::get_if<SingleOp>(&v)) return {along(s->direction)};
  if (const auto* vo = std::get_if<VaryingOp>(&v)) return {along(vo->base)};

  // MULTI: rows of the pseudo-inverse give phi(b_i) = delta_ij; their sum
  // gives phi(b_i) = 1 for every i.
  const auto& parts = std::get<MultiOp>(v).parts;
  Eigen::MatrixXcd B(static_cast<Eigen::Index>(parts.size()), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parts[i].second.coords[j];
  }
  // phi(b_i) = sum_j phi_j b_ij, so we need B * phi = e_i.
  const Eigen::MatrixXcd pinv = B.completeOrthogonalDecomposition().pseudoInverse();
  std::vector<Covector> out;
  std::vector<Complex> total(n, 0.0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<Complex> u(n);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = pinv(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
      total[j] += u[j];
    }
    out.push_back(Covector::for_space(std::move(u), space));
  }
  if (parts.size() > 1) out.push_back(Covector::for_space(std::move(total), space));
  return out;
}

}  // namespace

bool RegionBall::contains(const Covector& psi) const {
  require_same_dimension(center.dimension(), psi.dimension(), "RegionBall::contains");
  return (psi - center).dual_norm() < radius;
}

ExpPoly ExpCombo::to_exp_poly(std::size_t dimension, NormTag tag) const {
  std::vector<ExpTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    require_same_dimension(dimension, t.exponent.dimension(), "ExpCombo::to_exp_poly");
    out.push_back({Polynomial::constant(dimension, t.weight), t.exponent});
  }
  return ExpPoly(dimension, tag, std::move(out));
}

double eigenvalue_lipschitz(const OperatorSpec& op, const Covector& phi0, double delta) {
  const auto& v = op.variant();
  if (const auto* s = std::get_if<SingleOp>(&v)) {
    const double a = s->direction.norm();
    return a * derivative_bound(s->symbol, std::abs(pairing(phi0, s->direction)) + delta * a);
  }
  if (const auto* m = std::get_if<MultiOp>(&v)) {
    double total = 0.0;
    for (const auto& [sym, b] : m->parts) {
      const double bn = b.norm();
      total += bn * derivative_bound(sym, std::abs(pairing(phi0, b)) + delta * bn);
    }
    return total;
  }
  // d/dpsi sum_n c_n psi(b_n)^n is bounded by B sum_n n |c_n| (rho B)^(n-1)
  // <= B M R e^{R rho B} with rho = ||phi0|| + delta.
  const auto& vo = std::get<VaryingOp>(v);
  const TypeCertificate cert = vo.symbol.certificate();
  const double rho = phi0.dual_norm() + delta;
  return vo.bound * cert.M * cert.R * std::exp(cert.R * rho * vo.bound);
}

double certify_region_radius(const OperatorSpec& op, const Covector& phi0, Region region,
                             double margin) {
  if (region == Region::Boundary) throw std::invalid_argument("certify_region_radius: region must be U or V");
  const Approx g = eigenvalue(op, phi0, kEigenTol);
  const double mod = std::abs(g.value);
  const double slack = (region == Region::U ? (1.0 - margin) - (mod + g.err) : (mod - g.err) - (1.0 + margin)) -
                       kClassifySlack;
  if (!(slack > 0.0)) return 0.0;
  auto ok = [&](double d) { return d * eigenvalue_lipschitz(op, phi0, d) <= slack; };
  double lo = 0.0;
  double hi = 2.0;
  if (ok(hi)) return hi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

RegionBall find_region_point(const OperatorSpec& op, Region region, double margin, int budget,
                             const BallSpec& ball) {
  if (region == Region::Boundary) throw std::invalid_argument("find_region_point: region must be U or V");
  if (!(margin > 0.0)) throw std::invalid_argument("find_region_point: margin must be positive");
  const std::vector<Covector> dirs = scan_directions(op);
  constexpr int kAngles = 64;
  constexpr int kRadii = 8;

  for (int j = 0; j <= budget; ++j) {
    std::vector<double> radii;
    if (j == 0) radii.push_back(0.0);
    for (int q = 1; q <= kRadii; ++q) {
      radii.push_back(j == 0 ? q / 8.0 : std::ldexp(1.0 + q / 8.0, j - 1));
    }
    std::optional<RegionBall> best;
    double best_score = 0.0;
    for (const auto& u : dirs) {
      for (double rad : radii) {
        const int angles = rad == 0.0 ? 1 : kAngles;
        for (int m = 0; m < angles; ++m) {
          const Complex lambda = std::polar(rad, 2.0 * std::numbers::pi * m / kAngles);
          const Covector phi0 = lambda * u;
          const double delta = certify_region_radius(op, phi0, region, margin);
          if (!(delta > 0.0)) continue;
          const double score = delta * std::exp(-dnorm(phi0, ball) * ball.radius);
          if (!best || score > best_score) {
            best = RegionBall{phi0, delta, region, margin, eigenvalue(op, phi0, kEigenTol).value};
            best_score = score;
          }
        }
      }
    }
    if (best) return *best;
  }
  throw SearchFailure("find_region_point: no " + to_string(region) + " point within budget " +
                      std::to_string(budget));
}

ExpCombo approx_power(const Covector& phi, unsigned k, double eps, const BallSpec& ball,
                      std::optional<double> t, PowerMode mode, const DensityConfig& config) {
  if (k == 0) throw std::invalid_argument("approx_power: k must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("approx_power: eps must be positive");
  const double t0 = t.value_or(config.t_start);
  if (!(t0 > 0.0 && t0 < 1.0)) throw std::invalid_argument("approx_power: t must lie in (0, 1)");

  PowerBuilder builder(dnorm(phi, ball) * ball.radius, mode, config);
  const ScalarCombo sc = builder.build(k, eps, t0);
  std::map<Covector, Complex, CovectorLess> acc;
  for (const auto& [s, w] : sc.weights) {
    Covector e = Complex(s.first, s.second) * phi;
    for (auto& c : e.coords) {
      if (c.real() == 0.0) c.real(0.0);
      if (c.imag() == 0.0) c.imag(0.0);
    }
    acc[e] += w;
  }
  ExpCombo out = finish(acc, sc.err, sc.mass, ball);
  out.t_used = sc.t;
  return out;
}

ExpCombo approx_in_region(const ExpPoly& f, const OperatorSpec& op, Region region, double eps,
                          const BallSpec& ball, const DensityConfig& config) {
  if (!(eps > 0.0)) throw std::invalid_argument("approx_in_region: eps must be positive");
  require_same_dimension(op.dimension(), f.dimension(), "approx_in_region");
  if (f.is_zero()) {
    ExpCombo out;
    out.ball = ball;
    return out;
  }
  const RegionBall rb = find_region_point(op, region, config.margin, config.search_budget, ball);
  return approx_in_region_ball(f, rb, eps, ball, config);
}

namespace {

// (sum_j d_j x_j)^m / m! as a polynomial, for m = 0..M.
std::vector<Polynomial> scaled_powers(const Covector& d, unsigned M) {
  const std::size_t n = d.dimension();
  Polynomial lin(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (d.coords[j] != Complex(0.0)) lin += Complex(d.coords[j]) * Polynomial::variable(n, j);
  }
  std::vector<Polynomial> out{Polynomial::constant(n, 1.0)};
  for (unsigned m = 1; m <= M; ++m) {
    Polynomial next = out.back() * lin;
    next *= Complex(1.0 / m);
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace

ExpCombo approx_in_region_ball(const ExpPoly& f, const RegionBall& rb, double eps,
                               const BallSpec& ball, const DensityConfig& config) {
  if (!(eps > 0.0)) throw std::invalid_argument("approx_in_region: eps must be positive");
  require_same_dimension(rb.center.dimension(), f.dimension(), "approx_in_region");
  const std::size_t n = f.dimension();
  const double r = ball.radius;
  const double shift = std::exp(dnorm(rb.center, ball) * r);

  std::map<Covector, Complex, CovectorLess> acc;
  double mass = 0.0;
  double err = 0.0;

  // Bypass: constant multiples of exponentials already in the region ball.
  std::vector<const ExpTerm*> rest;
  for (const auto& term : f.terms()) {
    if (term.poly.degree() == 0 && rb.contains(term.exponent)) {
      const Complex c = term.poly.constant_term();
      acc[term.exponent] += c;
      mass += std::abs(c) * std::exp(dnorm(term.exponent, ball) * r);
    } else {
      rest.push_back(&term);
    }
  }

  if (!rest.empty()) {
    // Q ~ f e^{-phi0}: Taylor truncation of each e^{phi_i - phi0}.
    const double series_budget = eps * config.series_share / static_cast<double>(rest.size()) / shift;
    Polynomial Q(n);
    for (const ExpTerm* term : rest) {
      const Covector d = term->exponent - rb.center;
      const double rho = dnorm(d, ball) * r;
      const double pnorm = term->poly.coefficient_norm(r);
      unsigned M = 0;
      while (pnorm * exp_tail(rho, M + 1) > series_budget) {
        if (++M > config.max_degree) {
          throw ToleranceFailure("approx_in_region: Taylor degree cap " + std::to_string(config.max_degree) +
                                 " reached");
        }
      }
      err += shift * pnorm * exp_tail(rho, M + 1);
      const auto powers = scaled_powers(d, M);
      for (const auto& pw : powers) Q += term->poly * pw;
    }

    // Constant part sits exactly at phi0; the rest is polarized into powers.
    const Complex q0 = Q.constant_term();
    if (q0 != Complex(0.0)) {
      acc[rb.center] += q0;
      mass += std::abs(q0) * shift;
    }
    std::map<std::pair<std::vector<long long>, unsigned>, Complex> powers;
    for (const auto& [alpha, q] : Q.terms()) {
      if (alpha.degree() == 0) continue;
      for (const PolarTerm& pt : polarize(alpha)) powers[{pt.direction, pt.power}] += q * pt.weight;
    }

    const double delta = rb.radius;
    std::size_t live = 0;
    for (const auto& [key, W] : powers) live += (W != Complex(0.0));
    const double power_budget = live == 0 ? 0.0 : eps * config.power_share / static_cast<double>(live);
    for (const auto& [key, W] : powers) {
      if (W == Complex(0.0)) continue;
      const auto& [dir, k] = key;
      std::vector<Complex> coords(dir.begin(), dir.end());
      const Covector psi = Covector::for_space(std::move(coords), ball.norm_tag);
      const double s = config.rescale * delta / dnorm(psi, ball);
      const Covector scaled = s * psi;
      // psi^k = k! s^-k (scaled^k / k!)
      double factorial = 1.0;
      for (unsigned i = 2; i <= k; ++i) factorial *= i;
      const Complex F = W * factorial / ipow(s, k);
      const double local = power_budget / (std::abs(F) * shift);
      PowerBuilder builder(dnorm(scaled, ball) * r, config.power_mode, config);
      const ScalarCombo sc = builder.build(k, local, config.t_start);
      err += std::abs(F) * shift * sc.err;
      for (const auto& [sv, w] : sc.weights) {
        const Complex sigma(sv.first, sv.second);
        Covector e = rb.center + sigma * scaled;
        for (auto& c : e.coords) {
          if (c.real() == 0.0) c.real(0.0);
          if (c.imag() == 0.0) c.imag(0.0);
        }
        const Complex weight = F * w;
        acc[e] += weight;
        mass += std::abs(weight) * std::exp(dnorm(e, ball) * r);
      }
    }
  }

  // Rounding in the products of weights and in the shifted exponents.
  const double spread = 1.0 + (dnorm(rb.center, ball) + rb.radius) * r * static_cast<double>(n);
  err += 64.0 * kUnitRoundoff * spread * mass;
  if (err > eps) {
    throw ToleranceFailure("approx_in_region: certified error " + std::to_string(err) + " exceeds " +
                           std::to_string(eps));
  }
  ExpCombo out = finish(acc, err, mass, ball);
  out.region = rb;
  return out;
}

}  // namespace hyper
