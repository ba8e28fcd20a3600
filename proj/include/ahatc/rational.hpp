#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ahatc {

// All arithmetic in the system is exact. Weights, activations and scores are
// arbitrary-precision rationals; counts and polynomial coefficients are
// arbitrary-precision integers. mpq_class keeps values canonical (lowest
// terms, positive denominator) after every operation.
using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
        line(line),
        col(col) {}
  int line;
  int col;
};

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Canonical serialization is always "num/den", e.g. "-3/4", "2/1", "0/1".
std::string rational_to_string(const Rational& q);

// Parses "num/den" (or a bare integer, treated as den 1). When
// require_canonical is set, rejects fractions that are not in lowest terms
// or have a non-positive denominator; model files must be canonical.
Rational rational_from_string(std::string_view text, bool require_canonical = true);

Integer integer_from_string(std::string_view text);

}  // namespace ahatc
