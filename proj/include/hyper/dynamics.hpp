#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyper/density.hpp"
#include "hyper/exp_poly.hpp"
#include "hyper/operator.hpp"
#include "hyper/seminorm.hpp"

namespace hyper {

struct WitnessConfig {
  DensityConfig density;
  SamplerConfig sampler;
  std::size_t n_min = 1;
  std::size_t n_max = 5000;
  /// Halvings of the sub-tolerances after a sampled check fails.
  int retries = 4;
};

/// z close to f_src with T^n z close to f_tgt on the ball.
struct Witness {
  ExpPoly z;
  std::size_t n = 0;
  double src_error = 0.0;
  double tgt_error = 0.0;
  double certified_src = 0.0;
  double certified_tgt = 0.0;
  ExpCombo x0;
  ExpCombo y0;
};

/// Certified sum_i |w_i| (|g(psi_i)| + err)^n e^{||psi_i|| r} for a U-side combo.
double forward_decay_bound(const OperatorSpec& op, const ExpCombo& x0, std::size_t n,
                           const BallSpec& ball);
/// Certified sum_i |w_i| (|g(psi_i)| - err)^-n e^{||psi_i|| r} for a V-side combo.
double backward_decay_bound(const OperatorSpec& op, const ExpCombo& y0, std::size_t n,
                            const BallSpec& ball);

/// x0 ~ f_src from U, y0 ~ f_tgt from V (eps/3 each), smallest n >= n_min
/// with both decay bounds <= eps/3, z = x0 + S^n y0. Verified by sampling;
/// retried with halved sub-tolerances.
Witness transitivity_witness(const OperatorSpec& op, const ExpPoly& f_src, const ExpPoly& f_tgt,
                             double eps, const BallSpec& ball, const WitnessConfig& cfg = WitnessConfig());

struct TourStep {
  std::size_t n = 0;
  double sampled_src = 0.0;
  double sampled_tgt = 0.0;
  double certified_src = 0.0;
  double certified_tgt = 0.0;
  std::size_t terms_in_h = 0;
  int retries_used = 0;
};

struct Tour {
  ExpPoly h;
  std::vector<TourStep> steps;
  /// Sampled ||T^{n_j} h - f_j|| for the final h, one per completed step.
  std::vector<double> visit_errors;
  bool complete = false;
  std::string failure;

  std::vector<std::size_t> times() const;
};

/// Chains witnesses h_j = witness(h_{j-1} -> f_j) with n_j > n_{j-1} and
/// re-verifies every earlier visit after each step. Stops at the first step
/// whose retry budget runs out (complete = false, failure set).
Tour run_tour(const OperatorSpec& op, const std::vector<ExpPoly>& targets, double eps,
              const BallSpec& ball, const WitnessConfig& cfg = WitnessConfig());

/// As run_tour, but throws ToleranceFailure when the tour is incomplete.
Tour orbit_tour(const OperatorSpec& op, const std::vector<ExpPoly>& targets, double eps,
                const BallSpec& ball, const WitnessConfig& cfg = WitnessConfig());

struct DecayCurve {
  std::string label;
  Covector exponent;
  Complex g;
  bool inverse = false;
  std::vector<double> sampled;    // n = 1..steps
  std::vector<double> certified;  // n = 1..steps
  std::vector<double> ratios;     // certified[n] / certified[n-1]
};

struct CriterionReport {
  std::vector<DecayCurve> curves;
  double identity_defect = 0.0;
};

/// Decay of ||T^n e^phi|| for phi at the U-ball centre (and any extra
/// covectors in U), of ||S^n e^psi|| at the V-ball centre, and the largest
/// coefficient defect of T S - id on V-span samples.
CriterionReport criterion_report(const OperatorSpec& op, const BallSpec& ball, const WitnessConfig& cfg,
                                 std::size_t steps = 50, const std::vector<Covector>& extra = {});

}  // namespace hyper
