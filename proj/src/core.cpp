#include "hyper/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "hyper/errors.hpp"

namespace hyper {

NormTag dual(NormTag tag) {
  switch (tag) {
    case NormTag::L1:
      return NormTag::LInf;
    case NormTag::LInf:
      return NormTag::L1;
    case NormTag::L2:
      break;
  }
  return NormTag::L2;
}

std::string_view to_string(NormTag tag) {
  switch (tag) {
    case NormTag::L1:
      return "l1";
    case NormTag::L2:
      return "l2";
    case NormTag::LInf:
      return "linf";
  }
  return "l2";
}

NormTag parse_norm_tag(std::string_view text) {
  if (text == "l1" || text == "L1") return NormTag::L1;
  if (text == "l2" || text == "L2") return NormTag::L2;
  if (text == "linf" || text == "LINF" || text == "Linf") return NormTag::LInf;
  throw std::invalid_argument("unknown norm tag '" + std::string(text) + "'");
}

double vector_norm(std::span<const Complex> coords, NormTag tag) {
  switch (tag) {
    case NormTag::L1: {
      double s = 0.0;
      for (const auto& c : coords) s += std::abs(c);
      return s;
    }
    case NormTag::L2: {
      double m = 0.0;
      for (const auto& c : coords) m = std::max(m, std::abs(c));
      if (m == 0.0 || !std::isfinite(m)) return m;
      double s = 0.0;
      for (const auto& c : coords) s += std::norm(c / m);
      return m * std::sqrt(s);
    }
    case NormTag::LInf: {
      double m = 0.0;
      for (const auto& c : coords) m = std::max(m, std::abs(c));
      return m;
    }
  }
  return 0.0;
}

Complex ipow(Complex z, unsigned e) {
  Complex result = 1.0;
  while (e != 0) {
    if (e & 1u) result *= z;
    e >>= 1;
    if (e != 0) z *= z;
  }
  return result;
}

double ipow(double x, unsigned e) {
  double result = 1.0;
  while (e != 0) {
    if (e & 1u) result *= x;
    e >>= 1;
    if (e != 0) x *= x;
  }
  return result;
}

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

Point::Point(std::vector<Complex> c, NormTag tag) : coords(std::move(c)), norm_tag(tag) {
  if (coords.empty()) throw std::invalid_argument("Point: dimension must be >= 1");
}

bool Point::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](Complex c) { return c == 0.0; });
}

Point Point::unit(std::size_t n, std::size_t j, NormTag tag) {
  std::vector<Complex> c(n, 0.0);
  c.at(j) = 1.0;
  return Point(std::move(c), tag);
}

Point operator+(const Point& x, const Point& y) {
  require_same_dimension(x.dimension(), y.dimension(), "Point +");
  Point out = x;
  for (std::size_t j = 0; j < out.coords.size(); ++j) out.coords[j] += y.coords[j];
  return out;
}

Point operator*(Complex c, const Point& x) {
  Point out = x;
  for (auto& v : out.coords) v *= c;
  return out;
}

Covector::Covector(std::vector<Complex> c, NormTag dual_tag)
    : coords(std::move(c)), norm_tag(dual_tag) {
  if (coords.empty()) throw std::invalid_argument("Covector: dimension must be >= 1");
}

Covector Covector::for_space(std::vector<Complex> c, NormTag space) {
  return Covector(std::move(c), dual(space));
}

Covector Covector::zero(std::size_t n, NormTag space) {
  return for_space(std::vector<Complex>(n, 0.0), space);
}

Covector Covector::coordinate(std::size_t n, std::size_t j, NormTag space) {
  std::vector<Complex> c(n, 0.0);
  c.at(j) = 1.0;
  return for_space(std::move(c), space);
}

bool Covector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](Complex c) { return c == 0.0; });
}

Complex Covector::operator()(const Point& x) const { return pairing(*this, x); }

Complex pairing(const Covector& phi, const Point& x) {
  require_same_dimension(phi.dimension(), x.dimension(), "pairing");
  Complex s = 0.0;
  for (std::size_t j = 0; j < x.coords.size(); ++j) s += phi.coords[j] * x.coords[j];
  return s;
}

Covector operator+(const Covector& a, const Covector& b) {
  require_same_dimension(a.dimension(), b.dimension(), "Covector +");
  Covector out = a;
  for (std::size_t j = 0; j < out.coords.size(); ++j) out.coords[j] += b.coords[j];
  return out;
}

Covector operator-(const Covector& a, const Covector& b) {
  require_same_dimension(a.dimension(), b.dimension(), "Covector -");
  Covector out = a;
  for (std::size_t j = 0; j < out.coords.size(); ++j) out.coords[j] -= b.coords[j];
  return out;
}

Covector operator-(const Covector& a) { return Complex(-1.0) * a; }

Covector operator*(Complex c, const Covector& a) {
  Covector out = a;
  for (auto& v : out.coords) v *= c;
  return out;
}

namespace {

std::uint64_t bits(double d) { return std::bit_cast<std::uint64_t>(d); }

}  // namespace

bool bit_equal(const Covector& a, const Covector& b) {
  if (a.dimension() != b.dimension()) return false;
  for (std::size_t j = 0; j < a.coords.size(); ++j) {
    if (bits(a.coords[j].real()) != bits(b.coords[j].real()) ||
        bits(a.coords[j].imag()) != bits(b.coords[j].imag())) {
      return false;
    }
  }
  return true;
}

bool exponent_less(const Covector& a, const Covector& b) {
  const std::size_t n = std::min(a.dimension(), b.dimension());
  for (std::size_t j = 0; j < n; ++j) {
    const double ar = a.coords[j].real(), br = b.coords[j].real();
    if (ar != br) return ar < br;
    const double ai = a.coords[j].imag(), bi = b.coords[j].imag();
    if (ai != bi) return ai < bi;
  }
  if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
  // Equal values with different bit patterns (only +-0 after normalization).
  for (std::size_t j = 0; j < n; ++j) {
    if (bits(a.coords[j].real()) != bits(b.coords[j].real()))
      return bits(a.coords[j].real()) < bits(b.coords[j].real());
    if (bits(a.coords[j].imag()) != bits(b.coords[j].imag()))
      return bits(a.coords[j].imag()) < bits(b.coords[j].imag());
  }
  return false;
}

}  // namespace hyper
