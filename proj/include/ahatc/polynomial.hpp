#pragma once

#include <map>
#include <string>
#include <vector>

#include "ahatc/rational.hpp"

namespace ahatc {

// Sparse multivariate polynomial over Z. Exponent vectors are indexed by the
// ordered variable list; no zero coefficients are stored.
struct Polynomial {
  std::vector<std::string> vars;
  std::map<std::vector<unsigned>, Integer> monomials;

  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> variables) : vars(std::move(variables)) {}

  static Polynomial constant(std::vector<std::string> variables, const Integer& c);
  static Polynomial variable(std::vector<std::string> variables, size_t index);

  bool is_zero() const { return monomials.empty(); }
  bool is_constant() const;
  // Max total exponent over all monomials; 0 for constants and the zero polynomial.
  unsigned degree() const;
  unsigned degree_in(size_t var_index) const;
  bool is_homogeneous() const;
  Integer constant_term() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Integer& c) const;
  Polynomial pow(unsigned e) const;
  bool operator==(const Polynomial& o) const = default;

  Integer eval(const std::vector<Integer>& point) const;
  Rational eval(const std::vector<Rational>& point) const;

  // Same polynomial over a superset variable list (old vars must appear in order).
  Polynomial with_vars(const std::vector<std::string>& new_vars) const;

  void add_monomial(const std::vector<unsigned>& exps, const Integer& coeff);
  std::string to_string() const;

 private:
  void check_compatible(const Polynomial& o) const;
};

// q = X0^d * p(X1/X0, ..., Xm/X0): homogeneous of degree d = deg(p), with
// q(1, x) = p(x). The fresh variable is prepended under the given name.
Polynomial homogenize(const Polynomial& p, const std::string& fresh_var = "x0");

}  // namespace ahatc
