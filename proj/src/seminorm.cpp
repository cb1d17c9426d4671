#include "hyper/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyper/rng.hpp"

namespace hyper {

namespace {

// Covers the floating-point error of evaluating the bound itself.
constexpr double kRoundingSlack = 1.0 + 1e-13;

}  // namespace

BallSpec::BallSpec(double r, NormTag tag) : radius(r), norm_tag(tag) {
  if (!(r > 0.0)) throw std::invalid_argument("BallSpec: radius must be positive");
}

SamplerConfig::SamplerConfig(std::size_t count, std::uint64_t s) : sample_count(count), seed(s) {
  if (count == 0) throw std::invalid_argument("SamplerConfig: sample_count must be >= 1");
}

Point sphere_sample(std::size_t n, const BallSpec& ball, std::uint64_t seed, std::size_t index) {
  const CounterRng rng = CounterRng(seed, 0x5e1'0000ull).substream(index);
  std::vector<Complex> x(n);
  auto phase = [&](std::size_t j) {
    return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform(1000 + j));
  };
  switch (ball.norm_tag) {
    case NormTag::L2: {
      for (std::size_t j = 0; j < n; ++j) x[j] = Complex(rng.normal(2 * j), rng.normal(2 * j + 1));
      break;
    }
    case NormTag::L1: {
      // Exponential magnitudes normalized to sum 1: uniform on the simplex.
      for (std::size_t j = 0; j < n; ++j) x[j] = -std::log(rng.uniform(j)) * phase(j);
      break;
    }
    case NormTag::LInf: {
      const std::size_t peak = std::min<std::size_t>(n - 1, static_cast<std::size_t>(rng.uniform(999) * n));
      for (std::size_t j = 0; j < n; ++j) x[j] = (j == peak ? 1.0 : rng.uniform(j)) * phase(j);
      break;
    }
  }
  const double norm = vector_norm(x, ball.norm_tag);
  for (auto& c : x) c *= ball.radius / norm;
  return Point(std::move(x), ball.norm_tag);
}

std::vector<Point> sphere_samples(std::size_t n, const BallSpec& ball, const SamplerConfig& cfg) {
  std::vector<Point> out;
  out.reserve(cfg.sample_count);
  for (std::size_t i = 0; i < cfg.sample_count; ++i) out.push_back(sphere_sample(n, ball, cfg.seed, i));
  return out;
}

double sup_lower_serial(const ExpPoly& f, const BallSpec& ball, const SamplerConfig& cfg) {
  double best = 0.0;
  for (std::size_t i = 0; i < cfg.sample_count; ++i) {
    best = std::max(best, std::abs(f(sphere_sample(f.dimension(), ball, cfg.seed, i))));
  }
  return best;
}

double sup_lower(const ExpPoly& f, const BallSpec& ball, const SamplerConfig& cfg) {
  if (f.is_zero()) return 0.0;
  const auto count = static_cast<long long>(cfg.sample_count);
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (long long i = 0; i < count; ++i) {
    const Point x = sphere_sample(f.dimension(), ball, cfg.seed, static_cast<std::size_t>(i));
    best = std::max(best, std::abs(f(x)));
  }
  return best;
}

double sup_upper(const ExpPoly& f, const BallSpec& ball) {
  // |x_j| <= ||x|| for every tag, so |x^alpha| <= r^|alpha| on the ball.
  const NormTag dual_tag = dual(ball.norm_tag);
  double total = 0.0;
  for (const auto& t : f.terms()) {
    total += t.poly.coefficient_norm(ball.radius) *
             std::exp(vector_norm(t.exponent.coords, dual_tag) * ball.radius);
  }
  return total * kRoundingSlack;
}

Distance distance(const ExpPoly& f, const ExpPoly& g, const BallSpec& ball,
                  const SamplerConfig& cfg) {
  const ExpPoly d = subtract(f, g);
  return Distance{sup_lower(d, ball, cfg), sup_upper(d, ball)};
}

}  // namespace hyper
