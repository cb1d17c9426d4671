#include <benchmark/benchmark.h>

#include "hyper/exp_poly.hpp"
#include "hyper/seminorm.hpp"

namespace {

hyper::ExpPoly sample_function(std::size_t n) {
  using hyper::Complex;
  std::vector<hyper::ExpTerm> terms;
  for (std::size_t i = 0; i < 6; ++i) {
    std::vector<Complex> phi(n);
    for (std::size_t j = 0; j < n; ++j) phi[j] = Complex(0.3 * static_cast<double>(i) - 0.7, 0.1 * static_cast<double>(j));
    hyper::Polynomial p(n);
    p.add_term(hyper::MultiIndex::zero(n), Complex(1.0, 0.5 * static_cast<double>(i)));
    hyper::MultiIndex alpha = hyper::MultiIndex::zero(n);
    alpha.exponents[i % n] = 2;
    p.add_term(alpha, Complex(-0.25, 0.0));
    terms.push_back({p, hyper::Covector::for_space(phi, hyper::NormTag::L2)});
  }
  return hyper::ExpPoly(n, hyper::NormTag::L2, std::move(terms));
}

void BM_SupLowerSerial(benchmark::State& state) {
  const auto f = sample_function(3);
  const hyper::SamplerConfig cfg(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(hyper::sup_lower_serial(f, hyper::BallSpec(1.0), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SupLowerParallel(benchmark::State& state) {
  const auto f = sample_function(3);
  const hyper::SamplerConfig cfg(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(hyper::sup_lower(f, hyper::BallSpec(1.0), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SupLowerSerial)->RangeMultiplier(4)->Range(256, 65536);
BENCHMARK(BM_SupLowerParallel)->RangeMultiplier(4)->Range(256, 65536);

BENCHMARK_MAIN();
