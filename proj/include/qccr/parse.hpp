#pragma once

// Text syntax for polynomials:
//
//   (1-q)*I + q*c1 a1 - 3/2*c2 + (0,1)*a1
//
// `c<k>` / `a<k>` are the creator / annihilator of mode k (1-based), `I` the
// unit, `q` the indeterminate, `(re,im)` a complex literal; juxtaposition and
// `*` multiply, `/` divides by a scalar, `^` takes non-negative integer powers.

#include <stdexcept>
#include <string>
#include <string_view>

#include "qccr/wick.hpp"

namespace qccr {

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t column, const std::string& message);
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// `modes == 0` infers the mode count from the largest index used (at least 1).
wick::ExactPolynomial parse_polynomial(std::string_view text, std::size_t modes = 0);
/// Parses exactly, then evaluates every coefficient at the numeric q.
wick::FloatPolynomial parse_float_polynomial(std::string_view text, double q, std::size_t modes = 0);

std::string to_string(const wick::Word& w);
std::string to_string(const wick::ExactPolynomial& p);
/// Coefficients with 17 significant digits, so parsing the text gives back the same doubles.
std::string to_string(const wick::FloatPolynomial& p);

}  // namespace qccr
