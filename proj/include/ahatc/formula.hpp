#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ahatc/ahat.hpp"
#include "ahatc/polynomial.hpp"

namespace ahatc {

// Letter counts over a declared alphabet, in alphabet order.
using ParikhVector = std::vector<long long>;

ParikhVector parikh(const Word& word, const std::vector<Letter>& alphabet);
// a1^v1 ... am^vm; rejects the all-zero vector (words are nonempty).
Word canonical_word(const ParikhVector& v, const std::vector<Letter>& alphabet);

std::vector<Integer> to_integers(const ParikhVector& v);

enum class Rel { Gt, Lt, Ge, Le, Eq };

// ---------------------------------------------------------------------------
// Semi-algebraic formulas: Boolean combinations of polynomial atoms `p rel 0`
// over Parikh counts. normalize_semialg rewrites to and/or over strict `p > 0`
// atoms. The rewrites for >=, <=, = and negation use integrality of the
// domain (valid over N^m, NOT over R^m).
// ---------------------------------------------------------------------------
struct SemiAlgNode {
  enum class Kind { Atom, Not, And, Or };
  Kind kind = Kind::Atom;
  Polynomial poly;  // Atom: poly rel 0
  Rel rel = Rel::Gt;
  std::vector<SemiAlgNode> children;

  static SemiAlgNode atom(Polynomial p, Rel r);
  static SemiAlgNode negate(SemiAlgNode child);
  static SemiAlgNode conj(std::vector<SemiAlgNode> children);
  static SemiAlgNode disj(std::vector<SemiAlgNode> children);
  bool operator==(const SemiAlgNode&) const = default;
};

struct SemiAlgFormula {
  std::vector<std::string> vars;  // x_<letter>, in alphabet order
  SemiAlgNode root;
  bool operator==(const SemiAlgFormula&) const = default;
};

bool eval_semialg(const SemiAlgFormula& f, const ParikhVector& v);

// Equivalent formula over N^m using only and/or over strict `p > 0` atoms:
//   not(p > 0)  ->  -p + 1 > 0        p >= 0  ->  p + 1 > 0
//   p = 0       ->  -p^2 + 1 > 0      p != 0  ->  (p > 0) | (-p > 0)
SemiAlgFormula normalize_semialg(const SemiAlgFormula& f);
bool is_normalized(const SemiAlgFormula& f);

std::string semialg_to_string(const SemiAlgFormula& f);

// ---------------------------------------------------------------------------
// Quantifier-free Presburger formulas: and/or over literals, each a canonical
// linear inequality c1 x1 + ... + cm xm <= b (rational coefficients),
// possibly negated. Parsers push negations to the atoms.
// ---------------------------------------------------------------------------
struct LinearInequality {
  std::vector<Rational> coeffs;
  Rational bound;
  bool operator==(const LinearInequality&) const = default;
};

struct QfpaNode {
  enum class Kind { Lit, And, Or };
  Kind kind = Kind::Lit;
  LinearInequality atom;
  bool negated = false;  // literal: !(c.x <= b), i.e. c.x > b
  std::vector<QfpaNode> children;

  static QfpaNode literal(LinearInequality a, bool neg);
  static QfpaNode conj(std::vector<QfpaNode> children);
  static QfpaNode disj(std::vector<QfpaNode> children);
  bool operator==(const QfpaNode&) const = default;
};

struct QfpaFormula {
  std::vector<std::string> vars;
  QfpaNode root;
  bool operator==(const QfpaFormula&) const = default;
};

bool eval_qfpa(const QfpaFormula& f, const ParikhVector& v);
std::string qfpa_to_string(const QfpaFormula& f);

void for_each_literal(const QfpaNode& node, const std::function<void(const QfpaNode&)>& fn);

// ---------------------------------------------------------------------------
// Reduction of p(x) = 0 to a conjunction of strict simple quadratic
// inequalities over fresh chain variables. Each fresh variable is functionally
// determined by the original counts, so membership witnesses are computed,
// not searched. For every x in N^m:
//   p(x) = 0  <=>  the determined fresh assignment satisfies all q_i < 0.
// ---------------------------------------------------------------------------
struct FreshDef {
  std::string name;
  Polynomial definition;  // over original vars and earlier fresh vars
};

struct QuadraticReduction {
  std::vector<std::string> original_vars;
  std::vector<FreshDef> fresh;            // dependency order
  std::vector<std::string> all_vars;      // original + fresh
  std::vector<Polynomial> equations;      // each simple quadratic, meaning q = 0
  std::vector<Polynomial> inequalities;   // each equation split into q-1 < 0 and -q-1 < 0

  // Chain-determined fresh values for the given original counts.
  std::vector<Integer> witness(const std::vector<Integer>& original_values) const;
};

QuadraticReduction reduce_to_simple_quadratics(const Polynomial& p);

// aWX + bY + cZ + d decomposition of a simple quadratic polynomial.
// Indices are into the polynomial's variable list; -1 marks an absent slot.
struct SimpleQuad {
  Integer a = 0;
  int w = -1, x = -1;
  Integer b = 0;
  int y = -1;
  Integer c = 0;
  int z = -1;
  Integer d = 0;
};
SimpleQuad decompose_simple_quadratic(const Polynomial& q);

// Appendix-style rationalization: substitutes X_i = y_i/z_i - u_i/v_i and
// clears denominators by (z_i v_i)^deg_i. p has a rational root iff the
// result has a rational root with all 4m variables strictly positive.
Polynomial rationalize_polynomial(const Polynomial& p);

}  // namespace ahatc
