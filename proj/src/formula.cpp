#include "ahatc/formula.hpp"

#include <algorithm>
#include <sstream>

namespace ahatc {

ParikhVector parikh(const Word& word, const std::vector<Letter>& alphabet) {
  ParikhVector v(alphabet.size(), 0);
  for (const auto& a : word) {
    auto it = std::find(alphabet.begin(), alphabet.end(), a);
    if (it == alphabet.end()) throw Error("parikh: letter '" + a + "' not in alphabet");
    v[it - alphabet.begin()]++;
  }
  return v;
}

Word canonical_word(const ParikhVector& v, const std::vector<Letter>& alphabet) {
  if (v.size() != alphabet.size()) throw Error("canonical_word: arity mismatch");
  Word w;
  bool any = false;
  for (size_t i = 0; i < v.size(); i++) {
    if (v[i] < 0) throw Error("canonical_word: negative count");
    if (v[i] > 0) any = true;
    for (long long k = 0; k < v[i]; k++) w.push_back(alphabet[i]);
  }
  if (!any) throw Error("canonical_word: all-zero Parikh vector has no word in Sigma+");
  return w;
}

// --------------------------------------------------------------------------
// Semi-algebraic formulas
// --------------------------------------------------------------------------

SemiAlgNode SemiAlgNode::atom(Polynomial p, Rel r) {
  SemiAlgNode n;
  n.kind = Kind::Atom;
  n.poly = std::move(p);
  n.rel = r;
  return n;
}

SemiAlgNode SemiAlgNode::negate(SemiAlgNode child) {
  SemiAlgNode n;
  n.kind = Kind::Not;
  n.children.push_back(std::move(child));
  return n;
}

SemiAlgNode SemiAlgNode::conj(std::vector<SemiAlgNode> children) {
  if (children.size() == 1) return children[0];
  SemiAlgNode n;
  n.kind = Kind::And;
  n.children = std::move(children);
  return n;
}

SemiAlgNode SemiAlgNode::disj(std::vector<SemiAlgNode> children) {
  if (children.size() == 1) return children[0];
  SemiAlgNode n;
  n.kind = Kind::Or;
  n.children = std::move(children);
  return n;
}

static bool eval_rel(const Integer& value, Rel rel) {
  switch (rel) {
    case Rel::Gt: return value > 0;
    case Rel::Lt: return value < 0;
    case Rel::Ge: return value >= 0;
    case Rel::Le: return value <= 0;
    case Rel::Eq: return value == 0;
  }
  return false;
}

static bool eval_node(const SemiAlgNode& n, const std::vector<Integer>& point) {
  switch (n.kind) {
    case SemiAlgNode::Kind::Atom:
      return eval_rel(n.poly.eval(point), n.rel);
    case SemiAlgNode::Kind::Not:
      return !eval_node(n.children[0], point);
    case SemiAlgNode::Kind::And:
      for (const auto& c : n.children)
        if (!eval_node(c, point)) return false;
      return true;
    case SemiAlgNode::Kind::Or:
      for (const auto& c : n.children)
        if (eval_node(c, point)) return true;
      return false;
  }
  return false;
}

std::vector<Integer> to_integers(const ParikhVector& v) {
  std::vector<Integer> out;
  out.reserve(v.size());
  for (long long c : v) out.push_back(Integer(static_cast<long>(c)));
  return out;
}

bool eval_semialg(const SemiAlgFormula& f, const ParikhVector& v) {
  if (v.size() != f.vars.size())
    throw Error("eval_semialg: arity mismatch (" + std::to_string(v.size()) + " counts for " +
                std::to_string(f.vars.size()) + " variables)");
  return eval_node(f.root, to_integers(v));
}

namespace {

SemiAlgNode normalize_atom(const Polynomial& p, Rel rel) {
  Polynomial one = Polynomial::constant(p.vars, 1);
  switch (rel) {
    case Rel::Gt: return SemiAlgNode::atom(p, Rel::Gt);
    case Rel::Lt: return SemiAlgNode::atom(-p, Rel::Gt);
    case Rel::Ge: return SemiAlgNode::atom(p + one, Rel::Gt);
    case Rel::Le: return SemiAlgNode::atom(-p + one, Rel::Gt);
    case Rel::Eq: return SemiAlgNode::atom(-(p * p) + one, Rel::Gt);
  }
  throw Error("unreachable");
}

// p != 0 over the integers: (p > 0) | (-p > 0).
SemiAlgNode normalize_neq(const Polynomial& p) {
  std::vector<SemiAlgNode> parts;
  parts.push_back(SemiAlgNode::atom(p, Rel::Gt));
  parts.push_back(SemiAlgNode::atom(-p, Rel::Gt));
  return SemiAlgNode::disj(std::move(parts));
}

SemiAlgNode normalize_node(const SemiAlgNode& n, bool positive) {
  switch (n.kind) {
    case SemiAlgNode::Kind::Not:
      return normalize_node(n.children[0], !positive);
    case SemiAlgNode::Kind::And:
    case SemiAlgNode::Kind::Or: {
      std::vector<SemiAlgNode> children;
      for (const auto& c : n.children) children.push_back(normalize_node(c, positive));
      bool conj = (n.kind == SemiAlgNode::Kind::And) == positive;
      return conj ? SemiAlgNode::conj(std::move(children)) : SemiAlgNode::disj(std::move(children));
    }
    case SemiAlgNode::Kind::Atom: {
      if (positive) return normalize_atom(n.poly, n.rel);
      switch (n.rel) {  // negated relation
        case Rel::Gt: return normalize_atom(n.poly, Rel::Le);
        case Rel::Lt: return normalize_atom(n.poly, Rel::Ge);
        case Rel::Ge: return normalize_atom(n.poly, Rel::Lt);
        case Rel::Le: return normalize_atom(n.poly, Rel::Gt);
        case Rel::Eq: return normalize_neq(n.poly);
      }
    }
  }
  throw Error("unreachable");
}

}  // namespace

SemiAlgFormula normalize_semialg(const SemiAlgFormula& f) {
  return SemiAlgFormula{f.vars, normalize_node(f.root, true)};
}

static bool node_normalized(const SemiAlgNode& n) {
  switch (n.kind) {
    case SemiAlgNode::Kind::Atom: return n.rel == Rel::Gt;
    case SemiAlgNode::Kind::Not: return false;
    default:
      for (const auto& c : n.children)
        if (!node_normalized(c)) return false;
      return true;
  }
}

bool is_normalized(const SemiAlgFormula& f) { return node_normalized(f.root); }

static const char* rel_text(Rel r) {
  switch (r) {
    case Rel::Gt: return ">";
    case Rel::Lt: return "<";
    case Rel::Ge: return ">=";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
  }
  return "?";
}

static void print_node(std::ostream& out, const SemiAlgNode& n) {
  switch (n.kind) {
    case SemiAlgNode::Kind::Atom:
      out << n.poly.to_string() << " " << rel_text(n.rel) << " 0";
      break;
    case SemiAlgNode::Kind::Not:
      out << "!(";
      print_node(out, n.children[0]);
      out << ")";
      break;
    case SemiAlgNode::Kind::And:
    case SemiAlgNode::Kind::Or: {
      const char* op = n.kind == SemiAlgNode::Kind::And ? " & " : " | ";
      for (size_t i = 0; i < n.children.size(); i++) {
        if (i) out << op;
        out << "(";
        print_node(out, n.children[i]);
        out << ")";
      }
      break;
    }
  }
}

std::string semialg_to_string(const SemiAlgFormula& f) {
  std::ostringstream out;
  print_node(out, f.root);
  return out.str();
}

// --------------------------------------------------------------------------
// QFPA formulas
// --------------------------------------------------------------------------

QfpaNode QfpaNode::literal(LinearInequality a, bool neg) {
  QfpaNode n;
  n.kind = Kind::Lit;
  n.atom = std::move(a);
  n.negated = neg;
  return n;
}

QfpaNode QfpaNode::conj(std::vector<QfpaNode> children) {
  if (children.size() == 1) return children[0];
  QfpaNode n;
  n.kind = Kind::And;
  n.children = std::move(children);
  return n;
}

QfpaNode QfpaNode::disj(std::vector<QfpaNode> children) {
  if (children.size() == 1) return children[0];
  QfpaNode n;
  n.kind = Kind::Or;
  n.children = std::move(children);
  return n;
}

static bool eval_qfpa_node(const QfpaNode& n, const ParikhVector& v) {
  switch (n.kind) {
    case QfpaNode::Kind::Lit: {
      Rational lhs(0);
      for (size_t i = 0; i < n.atom.coeffs.size(); i++)
        if (n.atom.coeffs[i] != 0) lhs += n.atom.coeffs[i] * Rational(static_cast<long>(v[i]));
      bool sat = lhs <= n.atom.bound;
      return n.negated ? !sat : sat;
    }
    case QfpaNode::Kind::And:
      for (const auto& c : n.children)
        if (!eval_qfpa_node(c, v)) return false;
      return true;
    case QfpaNode::Kind::Or:
      for (const auto& c : n.children)
        if (eval_qfpa_node(c, v)) return true;
      return false;
  }
  return false;
}

bool eval_qfpa(const QfpaFormula& f, const ParikhVector& v) {
  if (v.size() != f.vars.size()) throw Error("eval_qfpa: arity mismatch");
  return eval_qfpa_node(f.root, v);
}

void for_each_literal(const QfpaNode& node, const std::function<void(const QfpaNode&)>& fn) {
  if (node.kind == QfpaNode::Kind::Lit) {
    fn(node);
    return;
  }
  for (const auto& c : node.children) for_each_literal(c, fn);
}

static void print_qfpa_atom(std::ostream& out, const LinearInequality& a,
                            const std::vector<std::string>& vars) {
  bool any = false;
  for (size_t i = 0; i < a.coeffs.size(); i++) {
    if (a.coeffs[i] == 0) continue;
    Rational c = a.coeffs[i];
    if (any) {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c < 0) {
      out << "-";
      c = -c;
    }
    out << rational_to_string(c) << "*" << vars[i];
    any = true;
  }
  if (!any) out << "0";
  out << " <= " << rational_to_string(a.bound);
}

static void print_qfpa_node(std::ostream& out, const QfpaNode& n, const std::vector<std::string>& vars) {
  switch (n.kind) {
    case QfpaNode::Kind::Lit:
      if (n.negated) out << "!(";
      print_qfpa_atom(out, n.atom, vars);
      if (n.negated) out << ")";
      break;
    case QfpaNode::Kind::And:
    case QfpaNode::Kind::Or: {
      const char* op = n.kind == QfpaNode::Kind::And ? " & " : " | ";
      for (size_t i = 0; i < n.children.size(); i++) {
        if (i) out << op;
        out << "(";
        print_qfpa_node(out, n.children[i], vars);
        out << ")";
      }
      break;
    }
  }
}

std::string qfpa_to_string(const QfpaFormula& f) {
  std::ostringstream out;
  print_qfpa_node(out, f.root, f.vars);
  return out.str();
}

// --------------------------------------------------------------------------
// Reduction to simple quadratic inequalities
// --------------------------------------------------------------------------

namespace {

// Builder that assembles the chain equations over a growing variable list.
// Polynomials are materialized once the full list is known.
struct ReductionBuilder {
  std::vector<std::string> all_vars;
  std::vector<FreshDef> fresh;  // definitions use a snapshot of all_vars at creation time
  int y_counter = 0;
  int z_counter = 0;
  // Equations in symbolic form: list of (coeff, v1, v2) with v2 = -1 for
  // linear terms and v1 = v2 = -1 for the constant.
  struct Term {
    Integer coeff;
    int v1;
    int v2;
  };
  std::vector<std::vector<Term>> equations;

  int add_fresh(const std::string& name, Polynomial def) {
    all_vars.push_back(name);
    fresh.push_back(FreshDef{name, std::move(def)});
    return static_cast<int>(all_vars.size()) - 1;
  }

  std::string next_y() { return "Y" + std::to_string(y_counter++); }
  std::string next_z() { return "Z" + std::to_string(z_counter++); }

  Polynomial var_poly(int idx) const {
    return Polynomial::variable(all_vars, static_cast<size_t>(idx));
  }
};

}  // namespace

std::vector<Integer> QuadraticReduction::witness(const std::vector<Integer>& original_values) const {
  if (original_values.size() != original_vars.size())
    throw Error("witness: arity mismatch with the original variables");
  std::vector<Integer> values = original_values;
  for (const auto& def : fresh) {
    std::vector<Integer> point(values.begin(), values.begin() + def.definition.vars.size());
    values.push_back(def.definition.eval(point));
  }
  return values;
}

QuadraticReduction reduce_to_simple_quadratics(const Polynomial& p) {
  ReductionBuilder b;
  b.all_vars = p.vars;
  const int m = static_cast<int>(p.vars.size());

  // The constant-one variable (the proof's Y0 = 1), needed whenever a
  // degree-1 monomial enters an accumulator as a quadratic term.
  bool need_one = false;
  for (const auto& [e, c] : p.monomials) {
    unsigned total = 0;
    for (unsigned x : e) total += x;
    if (total == 1) need_one = true;
  }
  int one_idx = -1;
  if (need_one) {
    one_idx = b.add_fresh(b.next_y(), Polynomial::constant(b.all_vars, 1));
    std::vector<ReductionBuilder::Term> eq;  // Y0 - 1 = 0
    eq.push_back(ReductionBuilder::Term{Integer(1), one_idx, -1});
    eq.push_back(ReductionBuilder::Term{Integer(-1), -1, -1});
    b.equations.push_back(std::move(eq));
  }

  // Per-monomial products. Each monomial |c| * F1...Fd contributes one
  // accumulator step; degrees >= 2 first build a prefix-product chain so the
  // final quadratic term has pairwise distinct variables.
  int pos_acc = -1, neg_acc = -1;
  for (const auto& [exps, coeff] : p.monomials) {
    std::vector<int> factors;
    for (int i = 0; i < m; i++)
      for (unsigned k = 0; k < exps[i]; k++) factors.push_back(i);
    Integer mag = coeff < 0 ? Integer(-coeff) : coeff;
    bool positive = coeff > 0;

    ReductionBuilder::Term product_term{Integer(0), -1, -1};
    if (factors.empty()) {
      product_term = {mag, -1, -1};  // constant contribution via the d slot
    } else if (factors.size() == 1) {
      product_term = {mag, one_idx, factors[0]};  // |c| * (Y0 * X)
    } else {
      // prefix = F1 (aliased when the first two factors coincide), then
      // prefix = prefix * Fk, ending with |c| * (prefix * Fd).
      int prefix;
      size_t next;
      if (factors[0] == factors[1]) {
        prefix = b.add_fresh(b.next_y(), b.var_poly(factors[0]));
        std::vector<ReductionBuilder::Term> eq;  // Y - X = 0
        eq.push_back(ReductionBuilder::Term{Integer(1), prefix, -1});
        eq.push_back(ReductionBuilder::Term{Integer(-1), factors[0], -1});
        b.equations.push_back(std::move(eq));
        next = 1;
      } else {
        prefix = factors[0];
        next = 1;
      }
      while (next + 1 < factors.size()) {
        Polynomial def = b.var_poly(prefix) * b.var_poly(factors[next]);
        int np = b.add_fresh(b.next_y(), std::move(def));
        std::vector<ReductionBuilder::Term> eq;  // P*F - P' = 0
        eq.push_back(ReductionBuilder::Term{Integer(1), prefix, factors[next]});
        eq.push_back(ReductionBuilder::Term{Integer(-1), np, -1});
        b.equations.push_back(std::move(eq));
        prefix = np;
        next++;
      }
      product_term = {mag, prefix, factors[next]};
    }

    // Accumulate into the positive or negative running sum.
    int& acc = positive ? pos_acc : neg_acc;
    Polynomial def(b.all_vars);
    if (acc >= 0) def = b.var_poly(acc);
    {
      Polynomial step(b.all_vars);
      if (product_term.v1 < 0 && product_term.v2 < 0) {
        step = Polynomial::constant(b.all_vars, product_term.coeff);
      } else {
        step = b.var_poly(product_term.v1) * b.var_poly(product_term.v2) * product_term.coeff;
      }
      def = def + step;
    }
    int new_acc = b.add_fresh(b.next_z(), std::move(def));
    std::vector<ReductionBuilder::Term> eq;
    if (product_term.v1 < 0 && product_term.v2 < 0)
      eq.push_back(ReductionBuilder::Term{product_term.coeff, -1, -1});
    else
      eq.push_back(ReductionBuilder::Term{product_term.coeff, product_term.v1, product_term.v2});
    if (acc >= 0) eq.push_back(ReductionBuilder::Term{Integer(1), acc, -1});
    eq.push_back(ReductionBuilder::Term{Integer(-1), new_acc, -1});
    b.equations.push_back(std::move(eq));
    acc = new_acc;
  }

  // Final balance: positive sum equals negative sum (p(x) = 0).
  {
    std::vector<ReductionBuilder::Term> eq;
    if (pos_acc >= 0) eq.push_back(ReductionBuilder::Term{Integer(1), pos_acc, -1});
    if (neg_acc >= 0) eq.push_back(ReductionBuilder::Term{Integer(-1), neg_acc, -1});
    // p identically zero: the empty equation 0 = 0 still yields the two
    // trivial inequalities -1 < 0.
    b.equations.push_back(std::move(eq));
  }

  QuadraticReduction r;
  r.original_vars = p.vars;
  r.all_vars = b.all_vars;
  for (auto& def : b.fresh) r.fresh.push_back(std::move(def));

  for (const auto& eq : b.equations) {
    Polynomial q(r.all_vars);
    for (const auto& t : eq) {
      if (t.v1 < 0 && t.v2 < 0) {
        q = q + Polynomial::constant(r.all_vars, t.coeff);
      } else if (t.v2 < 0) {
        q = q + Polynomial::variable(r.all_vars, t.v1) * t.coeff;
      } else {
        q = q + Polynomial::variable(r.all_vars, t.v1) * Polynomial::variable(r.all_vars, t.v2) * t.coeff;
      }
    }
    Polynomial one = Polynomial::constant(r.all_vars, 1);
    r.equations.push_back(q);
    r.inequalities.push_back(q - one);   // q - 1 < 0
    r.inequalities.push_back(-q - one);  // -q - 1 < 0
  }
  return r;
}

SimpleQuad decompose_simple_quadratic(const Polynomial& q) {
  SimpleQuad s;
  bool have_quad = false;
  int linear_used = 0;
  for (const auto& [e, c] : q.monomials) {
    std::vector<int> present;
    unsigned total = 0;
    for (size_t i = 0; i < e.size(); i++) {
      total += e[i];
      if (e[i] > 0) present.push_back(static_cast<int>(i));
      if (e[i] > 2) throw Error("not simple quadratic: exponent above 2 in " + q.to_string());
    }
    if (total == 0) {
      s.d = c;
    } else if (total == 1) {
      if (linear_used == 0) {
        s.b = c;
        s.y = present[0];
      } else if (linear_used == 1) {
        s.c = c;
        s.z = present[0];
      } else {
        throw Error("not simple quadratic: more than two linear terms in " + q.to_string());
      }
      linear_used++;
    } else if (total == 2) {
      if (have_quad) throw Error("not simple quadratic: multiple quadratic terms in " + q.to_string());
      have_quad = true;
      s.a = c;
      s.w = present[0];
      s.x = present.size() == 2 ? present[1] : present[0];
    } else {
      throw Error("not simple quadratic: degree above 2 in " + q.to_string());
    }
  }
  return s;
}

Polynomial rationalize_polynomial(const Polynomial& p) {
  const size_t m = p.vars.size();
  std::vector<std::string> vars;
  for (size_t i = 0; i < m; i++) {
    std::string suffix = std::to_string(i + 1);
    vars.push_back("y" + suffix);
    vars.push_back("z" + suffix);
    vars.push_back("u" + suffix);
    vars.push_back("v" + suffix);
  }
  std::vector<unsigned> deg(m);
  for (size_t i = 0; i < m; i++) deg[i] = p.degree_in(i);

  auto y = [&](size_t i) { return Polynomial::variable(vars, 4 * i); };
  auto z = [&](size_t i) { return Polynomial::variable(vars, 4 * i + 1); };
  auto u = [&](size_t i) { return Polynomial::variable(vars, 4 * i + 2); };
  auto v = [&](size_t i) { return Polynomial::variable(vars, 4 * i + 3); };

  Polynomial q(vars);
  for (const auto& [e, c] : p.monomials) {
    Polynomial term = Polynomial::constant(vars, c);
    for (size_t i = 0; i < m; i++) {
      Polynomial num = y(i) * v(i) - u(i) * z(i);  // numerator of y/z - u/v over z*v
      term = term * num.pow(e[i]) * (z(i) * v(i)).pow(deg[i] - e[i]);
    }
    q = q + term;
  }
  return q;
}

}  // namespace ahatc
