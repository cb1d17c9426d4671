#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyper/exp_poly.hpp"
#include "hyper/seminorm.hpp"
#include "hyper/symbol.hpp"

namespace hyper {

/// n -> b_n for the varying-direction operator; every rule is base * s(n).
enum class DirectionRule {
  Const,        // b_n = base
  Alternating,  // b_n = (-1)^n base
  Harmonic,     // b_n = (1 + 1/(n+1)) base
};

DirectionRule parse_direction_rule(const std::string& name);
std::string to_string(DirectionRule rule);

/// Phi_a(D) f = sum_n c_n d^n f(.)(a).
struct SingleOp {
  Symbol symbol;
  Point direction;
};

/// Phi^1_{b_1}(D) + ... + Phi^r_{b_r}(D) with {b_i} linearly independent.
struct MultiOp {
  std::vector<std::pair<Symbol, Point>> parts;
};

/// f -> sum_n c_n d^n f(.)(b_n) with sup ||b_n|| <= bound.
struct VaryingOp {
  Symbol symbol;
  Point base;
  DirectionRule rule = DirectionRule::Const;
  double bound = 0.0;

  Point direction(std::size_t n) const;
};

/// Validated operator description. Constructors enforce a != 0, linear
/// independence of the b_i, and b_n != 0 with ||b_n|| <= B.
class OperatorSpec {
 public:
  static OperatorSpec single(Symbol phi, Point a);
  static OperatorSpec multi(std::vector<std::pair<Symbol, Point>> parts);
  /// `bound` <= 0 selects the smallest valid bound for the rule.
  static OperatorSpec varying(Symbol phi, Point base, DirectionRule rule, double bound = 0.0);

  const std::variant<SingleOp, MultiOp, VaryingOp>& variant() const { return op_; }
  std::size_t dimension() const;
  NormTag norm_tag() const;
  std::string describe() const;

  /// Directions paired with their symbols; for VARYING only the base.
  std::vector<std::pair<const Symbol*, const Point*>> directions() const;

 private:
  explicit OperatorSpec(std::variant<SingleOp, MultiOp, VaryingOp> op) : op_(std::move(op)) {}
  std::variant<SingleOp, MultiOp, VaryingOp> op_;
};

/// T e^phi = g(phi) e^phi.
Approx eigenvalue(const OperatorSpec& op, const Covector& phi, double tol = 1e-14);

enum class Region { U, V, Boundary };
std::string to_string(Region region);

struct Classification {
  Region region = Region::Boundary;
  Complex g;
  double margin = 0.0;
};

/// U iff |g| <= 1 - margin, V iff |g| >= 1 + margin (the eigenvalue error is
/// charged against the test), Boundary otherwise.
Classification classify(const OperatorSpec& op, const Covector& phi, double margin,
                        double tol = 1e-14);

/// T f. SINGLE acts per term as e^phi sum_{k<=deg p} Phi^(k)(phi(a))/k! D_a^k p.
/// VARYING truncates the series in n with a certified tail <= tol in the
/// ||.||_r seminorm of `ball`.
ExpPoly apply(const OperatorSpec& op, const ExpPoly& f, double tol = 1e-14,
              const BallSpec& ball = BallSpec());

/// f(x + a): p e^phi -> e^{phi(a)} p(. + a) e^phi.
ExpPoly translate(const ExpPoly& f, const Point& a);

/// T^n f via exact per-exponent matrix powers on the polynomial coefficient
/// space (upper triangular with diagonal g(phi)); pure exponentials use g^n.
ExpPoly iterate(const OperatorSpec& op, const ExpPoly& f, std::size_t n, double tol = 1e-14,
                const BallSpec& ball = BallSpec());

/// S^n f with S e^psi = g(psi)^{-1} e^psi on span{e^psi : psi in V}.
/// Throws PreconditionError if an exponent is not in V or a polynomial part is
/// not constant.
ExpPoly apply_inverse(const OperatorSpec& op, const ExpPoly& f, double margin,
                      std::size_t power = 1, double tol = 1e-14);

struct GrowthBound {
  double C = 1.0;
  double inflated_radius = 0.0;
};

/// ||T^n f||_r <= C^n ||f||_{r'} from Cauchy estimates with rho = 2R:
/// C = M/(1 - R/rho) = 2M, r' = r + 2 R n ||a||. SINGLE only.
GrowthBound growth_bound(const OperatorSpec& op, std::size_t n, const BallSpec& ball);

/// Defining series sum_{n<=terms} c_n D_a^n f, term by term. Test oracle for
/// the closed-form SINGLE action.
ExpPoly apply_by_series(const Symbol& phi, const Point& a, const ExpPoly& f, std::size_t terms);

}  // namespace hyper
