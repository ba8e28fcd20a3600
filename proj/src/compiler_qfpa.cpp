#include <algorithm>

#include "ahatc/compiler.hpp"
#include "ahatc/parser.hpp"
#include "net_util.hpp"

namespace ahatc {

using namespace netutil;

namespace {

std::vector<LinearInequality> collect_atoms(const QfpaNode& root) {
  std::vector<LinearInequality> atoms;
  for_each_literal(root, [&](const QfpaNode& lit) {
    if (std::find(atoms.begin(), atoms.end(), lit.atom) == atoms.end())
      atoms.push_back(lit.atom);
  });
  return atoms;
}

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return a / g * b;
}

}  // namespace

// A positive rational below every violation gap: over natural-number points,
// a violated atom c.x <= b has c.x - b >= 1/D with D the lcm of all
// denominators, so any o <= 1/D works. We take 1/(D*M + 1) with M the largest
// numerator magnitude, a deterministic and easily audited choice.
Rational qfpa_margin(const QfpaFormula& f) {
  Integer den_lcm = 1;
  Integer max_num = 1;
  for_each_literal(f.root, [&](const QfpaNode& lit) {
    auto account = [&](const Rational& q) {
      den_lcm = lcm_int(den_lcm, q.get_den());
      Integer n = q.get_num();
      if (n < 0) n = -n;
      if (n > max_num) max_num = n;
    };
    for (const auto& c : lit.atom.coeffs) account(c);
    account(lit.atom.bound);
  });
  Rational o(1, den_lcm * max_num + 1);
  o.canonicalize();
  return o;
}

AhatModel compile_qfpa_one_layer(const QfpaFormula& f, const std::vector<Letter>& alphabet) {
  if (f.vars.size() != alphabet.size())
    throw Error("compile_qfpa_one_layer: formula arity does not match the alphabet");
  const size_t m = alphabet.size();
  std::vector<LinearInequality> atoms = collect_atoms(f.root);
  const size_t k = atoms.size();
  const Rational margin = qfpa_margin(f);

  AhatModel model;
  model.alphabet = alphabet;
  model.uses_end_marker = true;
  model.end_marker = kEndMarker;
  const size_t dim = m + k + 1;
  for (size_t i = 0; i < m; i++) {
    RatVec e(dim, Rational(0));
    e[i] = 1;
    model.embedding[alphabet[i]] = e;
  }
  {
    // iota($) carries the atom bounds and the margin constant o_phi.
    RatVec e(dim, Rational(0));
    for (size_t j = 0; j < k; j++) e[m + j] = atoms[j].bound;
    e[m + k] = margin;
    model.embedding[kEndMarker] = e;
  }

  AhaLayer layer;
  layer.query = AffineMap::zero(1, dim);
  layer.key = AffineMap::zero(1, dim);
  layer.value = AffineMap::identity(dim);

  // The net sees (x_pos, a) with a = (x_1/n', .., x_m/n', b_1/n', .., o/n').
  // Every subformula value is normalized to exactly o/n' when satisfied and 0
  // otherwise; disjunction is a clamped sum, conjunction subtracts (t-1)*o/n'.
  NetBuilder nb(2 * dim);
  const size_t avg_base = dim;
  auto avg = [&](size_t i) { return avg_base + i; };
  const size_t o_in = avg(m + k);

  // Stage 1: the margin carry plus one raw relu value per literal occurrence.
  std::vector<const QfpaNode*> literals;
  for_each_literal(f.root, [&](const QfpaNode& lit) { literals.push_back(&lit); });
  std::vector<RowSpec> first;
  first.push_back(pass(o_in));  // o/n', nonnegative
  for (const QfpaNode* lit : literals) {
    size_t j = static_cast<size_t>(
        std::find(atoms.begin(), atoms.end(), lit->atom) - atoms.begin());
    RowSpec row;
    if (!lit->negated) {
      // ReLU((o - (c.x - b))/n'): positive iff the atom holds.
      row.terms.push_back({o_in, Rational(1)});
      for (size_t i = 0; i < m; i++)
        if (lit->atom.coeffs[i] != 0) row.terms.push_back({avg(i), -lit->atom.coeffs[i]});
      row.terms.push_back({avg(m + j), Rational(1)});
    } else {
      // ReLU((c.x - b)/n'): positive iff the atom is violated.
      for (size_t i = 0; i < m; i++)
        if (lit->atom.coeffs[i] != 0) row.terms.push_back({avg(i), lit->atom.coeffs[i]});
      row.terms.push_back({avg(m + j), Rational(-1)});
    }
    first.push_back(row);
  }
  std::vector<size_t> stage1 = nb.append(first, Activation::Relu, /*keep_existing=*/false);
  const size_t o_comp = stage1[0];

  // Clamp every literal to exactly o/n': v - ReLU(v - o).
  std::vector<RowSpec> over;
  for (size_t t = 0; t < literals.size(); t++)
    over.push_back(RowSpec{{{stage1[t + 1], Rational(1)}, {o_comp, Rational(-1)}}, Rational(0)});
  std::vector<size_t> excess = nb.append(over, Activation::Relu);
  std::vector<RowSpec> clamped;
  for (size_t t = 0; t < literals.size(); t++)
    clamped.push_back(
        RowSpec{{{stage1[t + 1], Rational(1)}, {excess[t], Rational(-1)}}, Rational(0)});
  std::vector<size_t> lit_comps = nb.append(clamped, Activation::Identity);

  // Fold the Boolean structure bottom-up.
  size_t next_literal = 0;
  std::function<size_t(const QfpaNode&)> emit = [&](const QfpaNode& node) -> size_t {
    switch (node.kind) {
      case QfpaNode::Kind::Lit:
        return lit_comps[next_literal++];
      case QfpaNode::Kind::And: {
        std::vector<size_t> vals;
        for (const auto& c : node.children) vals.push_back(emit(c));
        RowSpec row;
        for (size_t v : vals) row.terms.push_back({v, Rational(1)});
        row.terms.push_back({o_comp, Rational(-static_cast<long>(vals.size() - 1))});
        return nb.append({row}, Activation::Relu)[0];
      }
      case QfpaNode::Kind::Or: {
        std::vector<size_t> vals;
        for (const auto& c : node.children) vals.push_back(emit(c));
        RowSpec sum;
        for (size_t v : vals) sum.terms.push_back({v, Rational(1)});
        size_t s = nb.append({sum}, Activation::Identity)[0];
        size_t over2 =
            nb.append({RowSpec{{{s, Rational(1)}, {o_comp, Rational(-1)}}, Rational(0)}},
                      Activation::Relu)[0];
        return nb.append({RowSpec{{{s, Rational(1)}, {over2, Rational(-1)}}, Rational(0)}},
                         Activation::Identity)[0];
      }
    }
    throw Error("unreachable");
  };
  size_t result = emit(f.root);
  nb.finish({result});
  layer.net = nb.take();
  model.layers.push_back(std::move(layer));

  model.sign_normalized_output = true;
  model.source = ModelSource{qfpa_to_string(f), "qfpa1", kToolVersion};
  model.validate();
  return model;
}

}  // namespace ahatc
