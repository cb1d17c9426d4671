#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyper/core.hpp"

namespace hyper {

/// Exponential-type majorant |c_n| <= M R^n / n!.
struct TypeCertificate {
  double M = 1.0;
  double R = 1.0;
};

enum class SymbolKind { Exp, ScaledExp, Poly, Series };

/// Entire symbol Phi(z) = sum_n c_n z^n of exponential type.
///
/// Exp: c_n = 1/n!. ScaledExp(b): c_n = b^n/n!. Poly: finite list.
/// Series: explicit prefix c_0..c_K, continued either by zeros (then it is a
/// polynomial) or by the coefficients of a closed kind.
/// Construction rejects constant symbols.
class Symbol {
 public:
  static Symbol exp();
  static Symbol scaled_exp(Complex b);
  static Symbol poly(std::vector<Complex> coefficients);
  static Symbol series(std::vector<Complex> prefix);
  static Symbol series(std::vector<Complex> prefix, const Symbol& tail);
  /// Prefix c_0..c_K of `closed`, continued by `closed` itself.
  static Symbol prefix_of(const Symbol& closed, std::size_t K);

  SymbolKind kind() const { return kind_; }
  Complex scale() const { return b_; }
  const std::vector<Complex>& prefix() const { return prefix_; }
  const Symbol* tail() const { return tail_.get(); }

  Complex coeff(std::size_t n) const;
  /// A valid certificate for every n (checked for explicit prefixes).
  TypeCertificate certificate() const { return cert_; }
  std::string describe() const;

 private:
  Symbol() = default;
  void finish();

  SymbolKind kind_ = SymbolKind::Exp;
  Complex b_ = 1.0;
  std::vector<Complex> prefix_;
  std::shared_ptr<const Symbol> tail_;
  TypeCertificate cert_;
};

struct CertificateCheck {
  bool ok = true;
  std::optional<std::size_t> violating_index;
};

/// |c_n| <= M R^n/n! for n <= n_max, and for all larger n as far as the kind
/// determines it.
CertificateCheck certificate_check(const Symbol& phi, const TypeCertificate& cert,
                                   std::size_t n_max);

struct Approx {
  Complex value;
  double err = 0.0;
};

/// Phi^(k)(lambda). Closed kinds are exact (err = 0); series with a closed
/// tail are truncated once the certified tail is <= tol.
/// Throws ToleranceFailure after 10^4 terms.
Approx eval_derivative(const Symbol& phi, unsigned k, Complex lambda, double tol = 1e-14);

/// Certified sup_{|w| <= rho} |Phi'(w)|.
double derivative_bound(const Symbol& phi, double rho);

/// Certified upper bound of sum_{j >= m} x^j / j! for x >= 0.
double exp_tail(double x, unsigned m);

/// `exp`, `exp*<re>,<im>`, `poly:<re>,<im>;<re>,<im>;...`
Symbol parse_symbol(std::string_view text);

}  // namespace hyper
