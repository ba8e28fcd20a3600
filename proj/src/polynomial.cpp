#include "ahatc/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ahatc {

Polynomial Polynomial::constant(std::vector<std::string> variables, const Integer& c) {
  Polynomial p(std::move(variables));
  if (c != 0) p.monomials[std::vector<unsigned>(p.vars.size(), 0)] = c;
  return p;
}

Polynomial Polynomial::variable(std::vector<std::string> variables, size_t index) {
  Polynomial p(std::move(variables));
  if (index >= p.vars.size()) throw Error("Polynomial::variable: index out of range");
  std::vector<unsigned> e(p.vars.size(), 0);
  e[index] = 1;
  p.monomials[e] = 1;
  return p;
}

bool Polynomial::is_constant() const {
  for (const auto& [e, c] : monomials)
    if (std::accumulate(e.begin(), e.end(), 0u) != 0) return false;
  return true;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : monomials)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

unsigned Polynomial::degree_in(size_t var_index) const {
  unsigned d = 0;
  for (const auto& [e, c] : monomials) d = std::max(d, e.at(var_index));
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (monomials.empty()) return true;
  unsigned d = std::accumulate(monomials.begin()->first.begin(), monomials.begin()->first.end(), 0u);
  for (const auto& [e, c] : monomials)
    if (std::accumulate(e.begin(), e.end(), 0u) != d) return false;
  return true;
}

Integer Polynomial::constant_term() const {
  auto it = monomials.find(std::vector<unsigned>(vars.size(), 0));
  return it == monomials.end() ? Integer(0) : it->second;
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (vars != o.vars) throw Error("polynomial arithmetic over different variable lists");
}

void Polynomial::add_monomial(const std::vector<unsigned>& exps, const Integer& coeff) {
  if (exps.size() != vars.size()) throw Error("add_monomial: exponent arity mismatch");
  if (coeff == 0) return;
  auto it = monomials.find(exps);
  if (it == monomials.end()) {
    monomials[exps] = coeff;
  } else {
    it->second += coeff;
    if (it->second == 0) monomials.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_compatible(o);
  Polynomial r = *this;
  for (const auto& [e, c] : o.monomials) r.add_monomial(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_compatible(o);
  Polynomial r = *this;
  for (const auto& [e, c] : o.monomials) r.add_monomial(e, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(vars);
  for (const auto& [e, c] : monomials) r.monomials[e] = -c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_compatible(o);
  Polynomial r(vars);
  for (const auto& [e1, c1] : monomials)
    for (const auto& [e2, c2] : o.monomials) {
      std::vector<unsigned> e(vars.size());
      for (size_t i = 0; i < vars.size(); i++) e[i] = e1[i] + e2[i];
      r.add_monomial(e, c1 * c2);
    }
  return r;
}

Polynomial Polynomial::operator*(const Integer& c) const {
  Polynomial r(vars);
  if (c == 0) return r;
  for (const auto& [e, k] : monomials) r.monomials[e] = k * c;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = Polynomial::constant(vars, 1);
  for (unsigned i = 0; i < e; i++) r = r * (*this);
  return r;
}

Integer Polynomial::eval(const std::vector<Integer>& point) const {
  if (point.size() != vars.size()) throw Error("polynomial eval arity mismatch");
  Integer acc = 0;
  for (const auto& [e, c] : monomials) {
    Integer term = c;
    for (size_t i = 0; i < e.size(); i++)
      for (unsigned k = 0; k < e[i]; k++) term *= point[i];
    acc += term;
  }
  return acc;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
  if (point.size() != vars.size()) throw Error("polynomial eval arity mismatch");
  Rational acc = 0;
  for (const auto& [e, c] : monomials) {
    Rational term = Rational(c);
    for (size_t i = 0; i < e.size(); i++)
      for (unsigned k = 0; k < e[i]; k++) term *= point[i];
    acc += term;
  }
  return acc;
}

Polynomial Polynomial::with_vars(const std::vector<std::string>& new_vars) const {
  std::vector<size_t> where(vars.size());
  for (size_t i = 0; i < vars.size(); i++) {
    auto it = std::find(new_vars.begin(), new_vars.end(), vars[i]);
    if (it == new_vars.end())
      throw Error("with_vars: variable '" + vars[i] + "' missing from the new list");
    where[i] = static_cast<size_t>(it - new_vars.begin());
  }
  Polynomial r(new_vars);
  for (const auto& [e, c] : monomials) {
    std::vector<unsigned> ne(new_vars.size(), 0);
    for (size_t i = 0; i < e.size(); i++) ne[where[i]] = e[i];
    r.monomials[ne] = c;
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (monomials.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : monomials) {
    Integer coeff = c;
    if (first) {
      if (coeff < 0) {
        out << "-";
        coeff = -coeff;
      }
    } else {
      out << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    bool any_var = false;
    std::ostringstream varpart;
    for (size_t i = 0; i < e.size(); i++) {
      if (e[i] == 0) continue;
      if (any_var) varpart << "*";
      varpart << vars[i];
      if (e[i] > 1) varpart << "^" << e[i];
      any_var = true;
    }
    if (!any_var) {
      out << coeff.get_str();
    } else if (coeff == 1) {
      out << varpart.str();
    } else {
      out << coeff.get_str() << "*" << varpart.str();
    }
  }
  return out.str();
}

Polynomial homogenize(const Polynomial& p, const std::string& fresh_var) {
  for (const auto& v : p.vars)
    if (v == fresh_var) throw Error("homogenize: variable '" + fresh_var + "' already present");
  std::vector<std::string> new_vars;
  new_vars.push_back(fresh_var);
  new_vars.insert(new_vars.end(), p.vars.begin(), p.vars.end());
  unsigned d = p.degree();
  Polynomial q(new_vars);
  for (const auto& [e, c] : p.monomials) {
    unsigned total = 0;
    for (unsigned x : e) total += x;
    std::vector<unsigned> ne;
    ne.push_back(d - total);
    ne.insert(ne.end(), e.begin(), e.end());
    q.monomials[ne] = c;
  }
  return q;
}

}  // namespace ahatc
