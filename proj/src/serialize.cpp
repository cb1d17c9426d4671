#include "hyper/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace hyper {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_text(const ExpPoly& f) {
  std::string out;
  for (const auto& t : f.terms()) {
    for (const auto& [alpha, c] : t.poly.terms()) {
      out += format_double(c.real());
      out += ' ';
      out += format_double(c.imag());
      out += " :";
      for (unsigned e : alpha.exponents) out += ' ' + std::to_string(e);
      out += " :";
      for (const auto& z : t.exponent.coords) {
        out += ' ' + format_double(z.real());
        out += ' ' + format_double(z.imag());
      }
      out += '\n';
    }
  }
  return out;
}

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, std::size_t line) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') throw ParseError(line, "not a number: '" + tok + "'");
  return v;
}

unsigned parse_exponent(const std::string& tok, std::size_t line) {
  char* end = nullptr;
  long v = std::strtol(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0' || v < 0) {
    throw ParseError(line, "not a nonnegative integer exponent: '" + tok + "'");
  }
  return static_cast<unsigned>(v);
}

}  // namespace

ExpPoly parse_exp_poly(std::string_view text, NormTag tag, std::size_t dimension) {
  std::vector<ExpTerm> terms;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t bar = line.find('|', start);
      std::string_view piece =
          line.substr(start, bar == std::string_view::npos ? line.npos : bar - start);
      start = bar == std::string_view::npos ? line.size() + 1 : bar + 1;

      const auto first = piece.find_first_not_of(" \t\r");
      if (first == std::string_view::npos || piece[first] == '#') continue;

      const std::size_t c1 = piece.find(':');
      const std::size_t c2 = c1 == piece.npos ? piece.npos : piece.find(':', c1 + 1);
      if (c2 == piece.npos) throw ParseError(line_no, "expected 'coef : alpha : phi'");
      const auto coef = split_ws(piece.substr(0, c1));
      const auto alpha = split_ws(piece.substr(c1 + 1, c2 - c1 - 1));
      const auto phi = split_ws(piece.substr(c2 + 1));
      if (coef.size() != 2) throw ParseError(line_no, "coefficient needs re and im parts");
      if (alpha.empty()) throw ParseError(line_no, "empty multi-index");
      if (dimension == 0) dimension = alpha.size();
      if (alpha.size() != dimension) {
        throw ParseError(line_no, "multi-index has " + std::to_string(alpha.size()) +
                                      " entries, expected " + std::to_string(dimension));
      }
      if (phi.size() != 2 * dimension) {
        throw ParseError(line_no, "exponent needs " + std::to_string(2 * dimension) + " numbers");
      }
      MultiIndex idx;
      for (const auto& tok : alpha) idx.exponents.push_back(parse_exponent(tok, line_no));
      std::vector<Complex> coords(dimension);
      for (std::size_t j = 0; j < dimension; ++j) {
        coords[j] = Complex(parse_number(phi[2 * j], line_no), parse_number(phi[2 * j + 1], line_no));
      }
      const Complex c(parse_number(coef[0], line_no), parse_number(coef[1], line_no));
      terms.push_back(ExpTerm{Polynomial::monomial(idx, c), Covector::for_space(coords, tag)});
    }
  }
  if (dimension == 0) throw ParseError(line_no, "cannot infer dimension of an empty function");
  return ExpPoly(dimension, tag, std::move(terms));
}

}  // namespace hyper
