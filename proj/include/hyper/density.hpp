#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hyper/exp_poly.hpp"
#include "hyper/operator.hpp"
#include "hyper/seminorm.hpp"

namespace hyper {

/// Ball {psi : ||psi - center||_* < radius} of covectors on which every
/// eigenvalue is certified to lie in `region` with the full `margin`.
struct RegionBall {
  Covector center;
  double radius = 0.0;
  Region region = Region::U;
  double margin = 0.0;
  Complex g_center;

  bool contains(const Covector& psi) const;
};

struct WeightedExp {
  Complex weight;
  Covector exponent;
};

/// sum_i w_i e^{psi_i} with ||combo - target||_r <= certified_error.
struct ExpCombo {
  std::vector<WeightedExp> terms;
  double certified_error = 0.0;
  BallSpec ball;
  /// sum |w_i| e^{||psi_i|| r} over all contributions before merging; drives
  /// the rounding part of the certificate.
  double mass = 0.0;
  std::optional<RegionBall> region;
  /// t used at the top level of approx_power (0 when not applicable).
  double t_used = 0.0;

  ExpPoly to_exp_poly(std::size_t dimension, NormTag tag) const;
};

/// How approx_power removes the lower-order terms of g_t.
enum class PowerMode {
  /// Real t; phi^j/j! (j < k) replaced by recursively built combinations.
  Recursive,
  /// Average of g_{t w^p} over P > k roots of unity w: the lower-order terms
  /// cancel exactly and the remainder only keeps orders k + mP, m >= 1.
  Rotated,
};

struct DensityConfig {
  double margin = 0.2;
  PowerMode power_mode = PowerMode::Rotated;
  /// Shells 0..search_budget of the region scan.
  int search_budget = 8;
  /// Error shares: Taylor truncation of e^{phi_i - phi_0}, and the power stage.
  /// The remainder absorbs rounding.
  double series_share = 0.25;
  double power_share = 0.5;
  /// psi is rescaled to norm rescale * delta before approx_power.
  double rescale = 0.95;
  /// Largest t tried by approx_power; halved until the certificate holds.
  double t_start = 0.75;
  /// Cap on the Taylor degree used in the series stage.
  unsigned max_degree = 48;
};

/// Certified Lipschitz-type bound sup_{||psi - phi0|| <= delta} |g(psi) - g(phi0)| / delta.
double eigenvalue_lipschitz(const OperatorSpec& op, const Covector& phi0, double delta);

/// Largest certified radius (0 if none) around phi0 for the given region.
double certify_region_radius(const OperatorSpec& op, const Covector& phi0, Region region,
                             double margin);

/// Deterministic scan for a region ball: shell j covers eigen-arguments of
/// modulus in (2^(j-1), 2^j] (j = 0: (0, 1]) on 8 radii x 64 angles per
/// direction functional; the first shell with a hit wins, best scored ball
/// inside it. Throws SearchFailure when the budget is exhausted.
RegionBall find_region_point(const OperatorSpec& op, Region region, double margin, int budget,
                             const BallSpec& ball = BallSpec());

/// Approximates phi^k/k! by exponentials e^{s phi}, |s| < 1, using
///   g_t = (e^{t phi} - 1 - t phi - ... - (t phi)^{k-1}/(k-1)!) / t^k.
/// Truncation error of g_t is bounded by
///   t^-k sum_{n>k} (t ||phi|| r)^n / n! <= t e^{||phi|| r}.
/// Recursive mode replaces the lower powers by recursively built combinations
/// (tolerance eps t^(k-j)/(k+1) each); rotated mode averages over rotated t.
/// Starts at `t` (default config.t_start) and halves until certified <= eps;
/// throws ToleranceFailure once t drops below 1e-8 or rounding dominates.
ExpCombo approx_power(const Covector& phi, unsigned k, double eps, const BallSpec& ball,
                      std::optional<double> t = std::nullopt,
                      PowerMode mode = PowerMode::Recursive,
                      const DensityConfig& config = DensityConfig());

/// Approximates f on the ball by exponentials whose exponents lie in a region
/// ball of `region`: shift by e^{-phi0}, Taylor-truncate, polarize monomials
/// into powers, approximate each power, shift back.
ExpCombo approx_in_region(const ExpPoly& f, const OperatorSpec& op, Region region, double eps,
                          const BallSpec& ball, const DensityConfig& config = DensityConfig());

/// Same with a region ball already found.
ExpCombo approx_in_region_ball(const ExpPoly& f, const RegionBall& rb, double eps,
                               const BallSpec& ball, const DensityConfig& config = DensityConfig());

}  // namespace hyper
