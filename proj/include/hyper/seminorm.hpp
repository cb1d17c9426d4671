#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hyper/exp_poly.hpp"

namespace hyper {

/// Closed ball {x : ||x|| <= radius} of C^N.
struct BallSpec {
  double radius = 1.0;
  NormTag norm_tag = NormTag::L2;

  BallSpec() = default;
  BallSpec(double r, NormTag tag = NormTag::L2);
};

struct SamplerConfig {
  std::size_t sample_count = 256;
  std::uint64_t seed = 0;

  SamplerConfig() = default;
  SamplerConfig(std::size_t count, std::uint64_t s);
};

/// The i-th point of the seeded sphere sequence; ||x|| = radius up to rounding.
/// Sample sets for different counts are prefixes of the same sequence.
Point sphere_sample(std::size_t dimension, const BallSpec& ball, std::uint64_t seed,
                    std::size_t index);
std::vector<Point> sphere_samples(std::size_t dimension, const BallSpec& ball,
                                  const SamplerConfig& cfg);

/// max |f| over the sphere samples: a lower bound for ||f||_r (maximum
/// principle: the sup over the ball is attained on the sphere).
/// OpenMP-parallel over samples; the max reduction is order independent.
double sup_lower(const ExpPoly& f, const BallSpec& ball, const SamplerConfig& cfg);
/// Serial reference for `sup_lower`.
double sup_lower_serial(const ExpPoly& f, const BallSpec& ball, const SamplerConfig& cfg);

/// sum_i [sum_alpha |c_{i,alpha}| r^|alpha|] exp(||phi_i||_* r) >= ||f||_r.
double sup_upper(const ExpPoly& f, const BallSpec& ball);

struct Distance {
  double sampled_lower = 0.0;
  double certified_upper = 0.0;
};

/// Ball distance ||f - g||_r as a (sampled lower, certified upper) pair.
Distance distance(const ExpPoly& f, const ExpPoly& g, const BallSpec& ball,
                  const SamplerConfig& cfg);

}  // namespace hyper
