#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hyper {

using Complex = std::complex<double>;

/// Norm carried by a finite-dimensional section C^N of E.
enum class NormTag { L1, L2, LInf };

/// L1 <-> LInf, L2 <-> L2.
NormTag dual(NormTag tag);
std::string_view to_string(NormTag tag);
NormTag parse_norm_tag(std::string_view text);

double vector_norm(std::span<const Complex> coords, NormTag tag);

/// A point x of C^N with the norm of the ambient space.
struct Point {
  std::vector<Complex> coords;
  NormTag norm_tag = NormTag::L2;

  Point() = default;
  Point(std::vector<Complex> c, NormTag tag = NormTag::L2);

  std::size_t dimension() const { return coords.size(); }
  double norm() const { return vector_norm(coords, norm_tag); }
  bool is_zero() const;

  static Point unit(std::size_t n, std::size_t j, NormTag tag = NormTag::L2);
};

Point operator+(const Point& x, const Point& y);
Point operator*(Complex c, const Point& x);

/// A linear functional phi on C^N, phi(x) = sum_j phi_j x_j (no conjugation).
/// `norm_tag` is the tag of the dual norm used to measure phi.
struct Covector {
  std::vector<Complex> coords;
  NormTag norm_tag = NormTag::L2;

  Covector() = default;
  Covector(std::vector<Complex> c, NormTag dual_tag = NormTag::L2);

  /// Covector acting on a space normed by `space`.
  static Covector for_space(std::vector<Complex> c, NormTag space);
  static Covector zero(std::size_t n, NormTag space);
  /// The coordinate functional x -> x_j.
  static Covector coordinate(std::size_t n, std::size_t j, NormTag space);

  std::size_t dimension() const { return coords.size(); }
  double dual_norm() const { return vector_norm(coords, norm_tag); }
  NormTag space_tag() const { return dual(norm_tag); }
  bool is_zero() const;

  Complex operator()(const Point& x) const;
};

Complex pairing(const Covector& phi, const Point& x);

Covector operator+(const Covector& a, const Covector& b);
Covector operator-(const Covector& a, const Covector& b);
Covector operator-(const Covector& a);
Covector operator*(Complex c, const Covector& a);

/// Exact component-wise bit equality (no epsilon).
bool bit_equal(const Covector& a, const Covector& b);
/// Strict weak order on the bit patterns' numeric values: (re, im) lexicographic
/// over components. Used for deterministic term order.
bool exponent_less(const Covector& a, const Covector& b);

/// z^e by repeated squaring (exact for small integer data, unlike std::pow).
Complex ipow(Complex z, unsigned e);
double ipow(double x, unsigned e);

void require_same_dimension(std::size_t a, std::size_t b, const char* what);

}  // namespace hyper
