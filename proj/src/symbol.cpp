#include "hyper/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "hyper/errors.hpp"
#include "hyper/serialize.hpp"

namespace hyper {

namespace {

constexpr std::size_t kMaxTerms = 10000;
constexpr double kRelSlack = 1e-12;

double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// |b|^n / n! computed in log space.
double closed_coeff_abs(double b_abs, std::size_t n) {
  if (n == 0) return 1.0;
  if (b_abs == 0.0) return 0.0;
  return std::exp(static_cast<double>(n) * std::log(b_abs) - log_factorial(n));
}

bool within(double value, const TypeCertificate& cert, std::size_t n) {
  const double bound = cert.M * std::exp(static_cast<double>(n) * std::log(cert.R) - log_factorial(n));
  return value <= bound * (1.0 + kRelSlack);
}

TypeCertificate prefix_certificate(const std::vector<Complex>& c, double R, double M0) {
  double M = M0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double scaled =
        std::abs(c[n]) * std::exp(log_factorial(n) - static_cast<double>(n) * std::log(R));
    M = std::max(M, scaled);
  }
  return TypeCertificate{M, R};
}

}  // namespace

Symbol Symbol::exp() {
  Symbol s;
  s.kind_ = SymbolKind::Exp;
  s.finish();
  return s;
}

Symbol Symbol::scaled_exp(Complex b) {
  Symbol s;
  s.kind_ = SymbolKind::ScaledExp;
  s.b_ = b;
  s.finish();
  return s;
}

Symbol Symbol::poly(std::vector<Complex> coefficients) {
  Symbol s;
  s.kind_ = SymbolKind::Poly;
  s.prefix_ = std::move(coefficients);
  s.finish();
  return s;
}

Symbol Symbol::series(std::vector<Complex> prefix) {
  Symbol s;
  s.kind_ = SymbolKind::Series;
  s.prefix_ = std::move(prefix);
  s.finish();
  return s;
}

Symbol Symbol::series(std::vector<Complex> prefix, const Symbol& tail) {
  if (tail.kind() == SymbolKind::Series || tail.kind() == SymbolKind::Poly) {
    throw std::invalid_argument("Symbol::series: tail must be a closed exponential kind");
  }
  Symbol s;
  s.kind_ = SymbolKind::Series;
  s.prefix_ = std::move(prefix);
  s.tail_ = std::make_shared<const Symbol>(tail);
  s.finish();
  return s;
}

Symbol Symbol::prefix_of(const Symbol& closed, std::size_t K) {
  std::vector<Complex> prefix(K + 1);
  for (std::size_t n = 0; n <= K; ++n) prefix[n] = closed.coeff(n);
  return series(std::move(prefix), closed);
}

void Symbol::finish() {
  switch (kind_) {
    case SymbolKind::Exp:
      cert_ = {1.0, 1.0};
      break;
    case SymbolKind::ScaledExp:
      if (b_ == 0.0) throw std::invalid_argument("Symbol: exp*0 is constant");
      cert_ = {1.0, std::abs(b_)};
      break;
    case SymbolKind::Poly:
    case SymbolKind::Series: {
      bool nonconstant = false;
      for (std::size_t n = 1; n < prefix_.size(); ++n) nonconstant |= prefix_[n] != 0.0;
      if (tail_) nonconstant = true;  // closed kinds have c_n != 0 for all n
      if (!nonconstant) throw std::invalid_argument("Symbol: constant symbol (all c_n = 0 for n >= 1)");
      if (tail_) {
        cert_ = prefix_certificate(prefix_, tail_->cert_.R, tail_->cert_.M);
      } else {
        cert_ = prefix_certificate(prefix_, 1.0, 0.0);
      }
      break;
    }
  }
}

Complex Symbol::coeff(std::size_t n) const {
  switch (kind_) {
    case SymbolKind::Exp: {
      double c = 1.0;
      for (std::size_t i = 2; i <= n; ++i) c /= static_cast<double>(i);
      return c;
    }
    case SymbolKind::ScaledExp: {
      Complex c = 1.0;
      for (std::size_t i = 1; i <= n; ++i) c *= b_ / static_cast<double>(i);
      return c;
    }
    case SymbolKind::Poly:
    case SymbolKind::Series:
      if (n < prefix_.size()) return prefix_[n];
      return tail_ ? tail_->coeff(n) : Complex(0.0);
  }
  return 0.0;
}

std::string Symbol::describe() const {
  auto pair = [](Complex c) { return format_double(c.real()) + "," + format_double(c.imag()); };
  switch (kind_) {
    case SymbolKind::Exp:
      return "exp";
    case SymbolKind::ScaledExp:
      return "exp*" + pair(b_);
    case SymbolKind::Poly:
    case SymbolKind::Series: {
      std::string out = kind_ == SymbolKind::Poly ? "poly:" : "series:";
      for (std::size_t n = 0; n < prefix_.size(); ++n) out += (n ? ";" : "") + pair(prefix_[n]);
      if (tail_) out += "+" + tail_->describe();
      return out;
    }
  }
  return "?";
}

CertificateCheck certificate_check(const Symbol& phi, const TypeCertificate& cert,
                                   std::size_t n_max) {
  if (!(cert.M > 0.0) || !(cert.R > 0.0)) return {false, 0};
  const std::size_t explicit_len =
      (phi.kind() == SymbolKind::Poly || phi.kind() == SymbolKind::Series) ? phi.prefix().size() : 0;
  const std::size_t upto = std::max(n_max, explicit_len);
  for (std::size_t n = 0; n <= upto; ++n) {
    if (!within(std::abs(phi.coeff(n)), cert, n)) return {false, n};
  }
  // Beyond `upto` only a closed exponential rule can contribute.
  const Symbol* closed = nullptr;
  if (phi.kind() == SymbolKind::Exp || phi.kind() == SymbolKind::ScaledExp) closed = &phi;
  if (phi.tail()) closed = phi.tail();
  if (closed) {
    const double b_abs = closed->kind() == SymbolKind::Exp ? 1.0 : std::abs(closed->scale());
    // M R^n / |b|^n is monotone in n; it stays >= 1 forever iff R >= |b|.
    if (cert.R < b_abs) {
      const double n_fail = std::log(cert.M) / (std::log(b_abs) - std::log(cert.R));
      std::size_t n = std::max<std::size_t>(upto + 1, static_cast<std::size_t>(std::floor(n_fail)));
      while (within(closed_coeff_abs(b_abs, n), cert, n)) ++n;
      return {false, n};
    }
  }
  return {true, std::nullopt};
}

double exp_tail(double x, unsigned m) {
  if (x < 0.0) throw std::invalid_argument("exp_tail: x must be >= 0");
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  double term = std::exp(static_cast<double>(m) * std::log(x) - log_factorial(m));
  double sum = 0.0;
  std::size_t j = m;
  while (x / static_cast<double>(j + 1) > 0.5) {
    sum += term;
    term *= x / static_cast<double>(j + 1);
    ++j;
  }
  sum += term / (1.0 - x / static_cast<double>(j + 1));
  return sum * (1.0 + 1e-12);
}

Approx eval_derivative(const Symbol& phi, unsigned k, Complex lambda, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("eval_derivative: tol must be positive");
  switch (phi.kind()) {
    case SymbolKind::Exp:
      return {std::exp(lambda), 0.0};
    case SymbolKind::ScaledExp:
      return {ipow(phi.scale(), k) * std::exp(phi.scale() * lambda), 0.0};
    case SymbolKind::Poly:
    case SymbolKind::Series:
      break;
  }
  // Horner on sum_{n >= k} c_n n!/(n-k)! lambda^(n-k) over the explicit prefix.
  auto falling = [](std::size_t n, unsigned k) {
    double f = 1.0;
    for (unsigned i = 0; i < k; ++i) f *= static_cast<double>(n - i);
    return f;
  };
  const auto& c = phi.prefix();
  if (!phi.tail()) {
    Complex acc = 0.0;
    for (std::size_t n = c.size(); n-- > k;) acc = acc * lambda + c[n] * falling(n, k);
    return {acc, 0.0};
  }
  // Closed tail: sum term by term until the certified remainder is below tol.
  const TypeCertificate cert = phi.certificate();
  const double x = cert.R * std::abs(lambda);
  Complex acc = 0.0;
  Complex power = 1.0;  // lambda^(n-k)
  for (std::size_t n = k; n < k + kMaxTerms; ++n) {
    acc += phi.coeff(n) * falling(n, k) * power;
    power *= lambda;
    if (n + 1 < c.size()) continue;
    // Remainder sum_{m > n} |c_m| m!/(m-k)! |lambda|^(m-k) <= M R^k tail(R|lambda|, n-k+1).
    const double rest = cert.M * ipow(cert.R, k) * exp_tail(x, static_cast<unsigned>(n - k + 1));
    if (rest <= tol) return {acc, rest};
  }
  throw ToleranceFailure("eval_derivative: tolerance unreachable within the term budget");
}

double derivative_bound(const Symbol& phi, double rho) {
  const TypeCertificate cert = phi.certificate();
  // sum n M R^n/n! rho^(n-1) = M R e^(R rho)
  double generic = cert.M * cert.R * std::exp(cert.R * rho);
  switch (phi.kind()) {
    case SymbolKind::Exp:
      return std::min(generic, std::exp(rho));
    case SymbolKind::ScaledExp: {
      const double b = std::abs(phi.scale());
      return std::min(generic, b * std::exp(b * rho));
    }
    case SymbolKind::Poly:
    case SymbolKind::Series:
      if (!phi.tail()) {
        double s = 0.0;
        const auto& c = phi.prefix();
        for (std::size_t n = 1; n < c.size(); ++n) {
          s += static_cast<double>(n) * std::abs(c[n]) * ipow(rho, static_cast<unsigned>(n - 1));
        }
        return std::min(generic, s * (1.0 + 1e-12));
      }
      return generic;
  }
  return generic;
}

namespace {

Complex parse_pair(std::string_view text) {
  const std::string s(text);
  const auto comma = s.find(',');
  char* end = nullptr;
  const double re = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::invalid_argument("bad complex literal '" + s + "'");
  double im = 0.0;
  if (comma != std::string::npos) {
    const char* start = s.c_str() + comma + 1;
    im = std::strtod(start, &end);
    if (end == start) throw std::invalid_argument("bad complex literal '" + s + "'");
  } else if (*end != '\0') {
    throw std::invalid_argument("bad complex literal '" + s + "'");
  }
  return Complex(re, im);
}

}  // namespace

Symbol parse_symbol(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "exp") return Symbol::exp();
  if (text.starts_with("exp*")) return Symbol::scaled_exp(parse_pair(text.substr(4)));
  if (text.starts_with("poly:")) {
    std::vector<Complex> c;
    std::string_view rest = text.substr(5);
    while (true) {
      const auto semi = rest.find(';');
      c.push_back(parse_pair(rest.substr(0, semi)));
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
    return Symbol::poly(std::move(c));
  }
  throw std::invalid_argument("unknown symbol '" + std::string(text) + "'");
}

}  // namespace hyper
