#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hyper/exp_poly.hpp"

namespace hyper {

/// Malformed ExpPoly text; `line()` is 1-based within the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Shortest round-trip representation ("%.17g").
std::string format_double(double x);

/// One term per line:
///   coef_re coef_im : alpha_1 ... alpha_N : phi_1_re phi_1_im ... phi_N_re phi_N_im
/// ordered by exponent, then graded-lex multi-index.
std::string to_text(const ExpPoly& f);

/// Inverse of `to_text`. Blank lines and lines starting with '#' are ignored;
/// '|' also separates terms so a whole function fits on one config line.
/// `dimension` of 0 means "infer from the first term"; an empty text needs it.
ExpPoly parse_exp_poly(std::string_view text, NormTag tag, std::size_t dimension = 0);

}  // namespace hyper
