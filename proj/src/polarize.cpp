#include "hyper/polarize.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hyper {

using boost::multiprecision::cpp_int;

Covector PolarTerm::psi(NormTag space) const {
  std::vector<Complex> c(direction.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = static_cast<double>(direction[j]);
  return Covector::for_space(std::move(c), space);
}

namespace {

cpp_int binomial(unsigned n, unsigned k) {
  cpp_int r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

cpp_int factorial(unsigned n) {
  cpp_int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

std::vector<PolarTerm> polarize(const MultiIndex& alpha) {
  const unsigned k = alpha.degree();
  if (k == 0) throw std::invalid_argument("polarize: degree must be >= 1");
  const std::size_t n = alpha.dimension();

  const cpp_int denom = (cpp_int(1) << k) * factorial(k);
  std::map<std::vector<long long>, Rational> merged;

  // m_v = number of minus signs among the alpha_v copies of coordinate v.
  std::vector<unsigned> minus(n, 0);
  while (true) {
    std::vector<long long> dir(n);
    cpp_int count = 1;
    int sign = 1;
    for (std::size_t v = 0; v < n; ++v) {
      dir[v] = static_cast<long long>(alpha[v]) - 2 * static_cast<long long>(minus[v]);
      count *= binomial(alpha[v], minus[v]);
      if (minus[v] % 2 == 1) sign = -sign;
    }
    long long g = 0;
    for (long long d : dir) g = std::gcd(g, d < 0 ? -d : d);
    if (g != 0) {
      Rational w(count * sign, denom);
      for (auto& d : dir) d /= g;
      w *= Rational(boost::multiprecision::pow(cpp_int(g), k));
      auto lead = std::find_if(dir.begin(), dir.end(), [](long long d) { return d != 0; });
      if (*lead < 0) {
        for (auto& d : dir) d = -d;
        if (k % 2 == 1) w = -w;
      }
      merged[dir] += w;
    }
    // Odometer over 0 <= minus[v] <= alpha[v].
    std::size_t v = 0;
    while (v < n && minus[v] == alpha[v]) minus[v++] = 0;
    if (v == n) break;
    ++minus[v];
  }

  std::vector<PolarTerm> out;
  for (auto& [dir, w] : merged) {
    if (w == 0) continue;
    PolarTerm t;
    t.exact_weight = w;
    t.weight = w.convert_to<double>();
    t.direction = dir;
    t.power = k;
    out.push_back(std::move(t));
  }
  return out;
}

std::map<std::vector<unsigned>, Rational> expand_exact(const std::vector<PolarTerm>& terms,
                                                       std::size_t dimension) {
  std::map<std::vector<unsigned>, Rational> out;
  for (const auto& t : terms) {
    // Multinomial expansion of (sum_j d_j x_j)^k.
    std::map<std::vector<unsigned>, cpp_int> power{{std::vector<unsigned>(dimension, 0), 1}};
    for (unsigned step = 0; step < t.power; ++step) {
      std::map<std::vector<unsigned>, cpp_int> next;
      for (const auto& [e, c] : power) {
        for (std::size_t j = 0; j < dimension; ++j) {
          if (t.direction[j] == 0) continue;
          auto e2 = e;
          ++e2[j];
          next[e2] += c * t.direction[j];
        }
      }
      power = std::move(next);
    }
    for (const auto& [e, c] : power) out[e] += t.exact_weight * Rational(c);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace hyper
