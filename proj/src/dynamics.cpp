#include "hyper/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "hyper/errors.hpp"
#include "hyper/rng.hpp"

namespace hyper {

namespace {

constexpr double kEigenTol = 1e-14;
// Relative slack on products of many rounded factors in the decay bounds.
constexpr double kBoundSlack = 1.0 + 1e-12;

double exp_weight(const Covector& psi, const BallSpec& ball) {
  return std::exp(vector_norm(psi.coords, dual(ball.norm_tag)) * ball.radius);
}

ExpCombo empty_combo(const BallSpec& ball) {
  ExpCombo c;
  c.ball = ball;
  return c;
}

ExpCombo approx_or_empty(const ExpPoly& f, const OperatorSpec& op, Region region, double eps,
                         const BallSpec& ball, const DensityConfig& cfg) {
  if (f.is_zero()) return empty_combo(ball);
  return approx_in_region(f, op, region, eps, ball, cfg);
}

}  // namespace

double forward_decay_bound(const OperatorSpec& op, const ExpCombo& x0, std::size_t n,
                           const BallSpec& ball) {
  double total = 0.0;
  for (const auto& t : x0.terms) {
    const Approx g = eigenvalue(op, t.exponent, kEigenTol);
    total += std::abs(t.weight) * std::pow(std::abs(g.value) + g.err, static_cast<double>(n)) *
             exp_weight(t.exponent, ball);
  }
  return total * kBoundSlack;
}

double backward_decay_bound(const OperatorSpec& op, const ExpCombo& y0, std::size_t n,
                            const BallSpec& ball) {
  double total = 0.0;
  for (const auto& t : y0.terms) {
    const Approx g = eigenvalue(op, t.exponent, kEigenTol);
    const double low = std::abs(g.value) - g.err;
    if (!(low > 1.0)) throw PreconditionError("backward_decay_bound: exponent outside V");
    total += std::abs(t.weight) * std::pow(low, -static_cast<double>(n)) * exp_weight(t.exponent, ball);
  }
  return total * kBoundSlack;
}

Witness transitivity_witness(const OperatorSpec& op, const ExpPoly& f_src, const ExpPoly& f_tgt,
                             double eps, const BallSpec& ball, const WitnessConfig& cfg) {
  if (!(eps > 0.0)) throw std::invalid_argument("transitivity_witness: eps must be positive");
  require_same_dimension(op.dimension(), f_src.dimension(), "transitivity_witness");
  require_same_dimension(op.dimension(), f_tgt.dimension(), "transitivity_witness");
  const std::size_t dim = op.dimension();
  const NormTag tag = f_tgt.norm_tag();

  double best_seen = 0.0;
  for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
    const double sub = std::ldexp(eps / 3.0, -attempt);
    Witness w;
    w.x0 = approx_or_empty(f_src, op, Region::U, sub, ball, cfg.density);
    w.y0 = approx_or_empty(f_tgt, op, Region::V, sub, ball, cfg.density);

    std::size_t n = std::max<std::size_t>(cfg.n_min, 1);
    double fwd = forward_decay_bound(op, w.x0, n, ball);
    double bwd = backward_decay_bound(op, w.y0, n, ball);
    while (fwd > sub || bwd > sub) {
      if (++n > cfg.n_max) {
        throw SearchFailure("transitivity_witness: no n <= " + std::to_string(cfg.n_max) +
                            " meets the decay bounds");
      }
      fwd = forward_decay_bound(op, w.x0, n, ball);
      bwd = backward_decay_bound(op, w.y0, n, ball);
    }
    w.n = n;
    const ExpPoly x0 = w.x0.to_exp_poly(dim, tag);
    const ExpPoly y0 = w.y0.to_exp_poly(dim, tag);
    w.z = add(x0, apply_inverse(op, y0, cfg.density.margin, n));
    w.certified_src = w.x0.certified_error + bwd;
    w.certified_tgt = w.y0.certified_error + fwd;
    w.src_error = sup_lower(subtract(w.z, f_src), ball, cfg.sampler);
    w.tgt_error = sup_lower(subtract(iterate(op, w.z, n, kEigenTol, ball), f_tgt), ball, cfg.sampler);
    if (w.src_error < eps && w.tgt_error < eps) return w;
    best_seen = std::max(w.src_error, w.tgt_error);
  }
  throw ToleranceFailure("transitivity_witness: sampled error " + std::to_string(best_seen) +
                         " still above " + std::to_string(eps) + " after retries");
}

std::vector<std::size_t> Tour::times() const {
  std::vector<std::size_t> out;
  for (const auto& s : steps) out.push_back(s.n);
  return out;
}

Tour run_tour(const OperatorSpec& op, const std::vector<ExpPoly>& targets, double eps,
              const BallSpec& ball, const WitnessConfig& cfg) {
  if (targets.empty()) throw std::invalid_argument("orbit_tour: no targets");
  if (!(eps > 0.0)) throw std::invalid_argument("orbit_tour: eps must be positive");
  const std::size_t J = targets.size();
  const ExpPoly& first = targets.front();

  Tour tour;
  tour.h = ExpPoly::zero(first.dimension(), first.norm_tag());
  std::size_t prev_n = 0;
  for (std::size_t j = 0; j < J; ++j) {
    double eps_j = std::ldexp(eps, -static_cast<int>(J - j));
    bool accepted = false;
    std::string why;
    for (int attempt = 0; attempt <= cfg.retries && !accepted; ++attempt, eps_j /= 2) {
      WitnessConfig wcfg = cfg;
      wcfg.n_min = std::max(cfg.n_min, prev_n + 1);
      Witness w;
      try {
        w = transitivity_witness(op, tour.h, targets[j], eps_j, ball, wcfg);
      } catch (const ToleranceFailure& e) {
        why = e.what();
        continue;
      }
      double worst = 0.0;
      for (std::size_t i = 0; i < j; ++i) {
        const ExpPoly visit = iterate(op, w.z, tour.steps[i].n, kEigenTol, ball);
        worst = std::max(worst, sup_lower(subtract(visit, targets[i]), ball, cfg.sampler));
      }
      if (worst >= eps) {
        why = "step " + std::to_string(j + 1) + ": earlier visit error " + std::to_string(worst) +
              " not below " + std::to_string(eps);
        continue;
      }
      TourStep step;
      step.n = w.n;
      step.sampled_src = w.src_error;
      step.sampled_tgt = w.tgt_error;
      step.certified_src = w.certified_src;
      step.certified_tgt = w.certified_tgt;
      step.terms_in_h = w.z.terms().size();
      step.retries_used = attempt;
      tour.h = std::move(w.z);
      tour.steps.push_back(step);
      prev_n = w.n;
      accepted = true;
    }
    if (!accepted) {
      tour.failure = "orbit_tour: retry budget exhausted (" + why + ")";
      break;
    }
  }
  tour.complete = tour.steps.size() == J;
  for (std::size_t i = 0; i < tour.steps.size(); ++i) {
    const ExpPoly visit = iterate(op, tour.h, tour.steps[i].n, kEigenTol, ball);
    tour.visit_errors.push_back(sup_lower(subtract(visit, targets[i]), ball, cfg.sampler));
  }
  return tour;
}

Tour orbit_tour(const OperatorSpec& op, const std::vector<ExpPoly>& targets, double eps,
                const BallSpec& ball, const WitnessConfig& cfg) {
  Tour tour = run_tour(op, targets, eps, ball, cfg);
  if (!tour.complete) throw ToleranceFailure(tour.failure);
  return tour;
}

CriterionReport criterion_report(const OperatorSpec& op, const BallSpec& ball, const WitnessConfig& cfg,
                                 std::size_t steps, const std::vector<Covector>& extra) {
  const double margin = cfg.density.margin;
  const RegionBall rb_u = find_region_point(op, Region::U, margin, cfg.density.search_budget, ball);
  const RegionBall rb_v = find_region_point(op, Region::V, margin, cfg.density.search_budget, ball);
  const std::size_t dim = op.dimension();
  const NormTag tag = op.norm_tag();

  auto curve = [&](std::string label, const Covector& phi, bool inverse) {
    DecayCurve c;
    c.label = std::move(label);
    c.exponent = phi;
    c.g = eigenvalue(op, phi, kEigenTol).value;
    c.inverse = inverse;
    const ExpPoly e = ExpPoly::exponential(phi);
    double prev = sup_upper(e, ball);
    for (std::size_t n = 1; n <= steps; ++n) {
      const ExpPoly f = inverse ? apply_inverse(op, e, margin, n) : iterate(op, e, n, kEigenTol, ball);
      const double upper = sup_upper(f, ball);
      c.sampled.push_back(sup_lower(f, ball, cfg.sampler));
      c.certified.push_back(upper);
      c.ratios.push_back(upper / prev);
      prev = upper;
    }
    return c;
  };

  CriterionReport report;
  report.curves.push_back(curve("T_U", rb_u.center, false));
  for (std::size_t i = 0; i < extra.size(); ++i) {
    report.curves.push_back(curve("T_extra" + std::to_string(i + 1), extra[i], false));
  }
  report.curves.push_back(curve("S_V", rb_v.center, true));

  // T S y = y on random elements of span{e^psi : psi in the V ball}.
  const CounterRng rng(cfg.sampler.seed, 0x7e57);
  std::uint64_t counter = 0;
  for (int s = 0; s < 8; ++s) {
    std::vector<ExpTerm> terms;
    for (int t = 0; t < 3; ++t) {
      std::vector<Complex> d(dim);
      for (auto& c : d) c = Complex(rng.normal(counter++), rng.normal(counter++));
      Covector dir = Covector::for_space(d, tag);
      const double scale = 0.5 * rb_v.radius * rng.uniform(counter++) / dir.dual_norm();
      const Complex w(rng.normal(counter++), rng.normal(counter++));
      terms.push_back({Polynomial::constant(dim, w), rb_v.center + scale * dir});
    }
    const ExpPoly y(dim, tag, std::move(terms));
    const ExpPoly back = apply(op, apply_inverse(op, y, margin, 1), kEigenTol, ball);
    report.identity_defect = std::max(report.identity_defect, coefficient_distance(back, y));
  }
  return report;
}

}  // namespace hyper
