#include <algorithm>
#include <functional>

#include "ahatc/compiler.hpp"
#include "ahatc/parser.hpp"
#include "net_util.hpp"

namespace ahatc {

using namespace netutil;

// Two layers over {a,b}, no end marker, accepting 2|w|_a^2 < |w|^2.
// Layer 1 replaces a-positions by the frequency n_a/n and b-positions by 0;
// its score table is <Ka,Qa> = <Ka,Qb> = 1, <Kb,Qa> = 0, <Kb,Qb> = 1, so
// a-positions average all positions while b-positions average only the b's.
// Layer 2 averages uniformly (each position contributes n_a/n or 0), giving
// n_a^2/n^2 everywhere, and the readout is t = 1/2 - n_a^2/n^2. Exactness
// makes t = 0 impossible: n_a/n is rational, 1/sqrt(2) is not.
AhatModel compile_sqrt_two_layer_nem() {
  AhatModel model;
  model.alphabet = {"a", "b"};
  model.uses_end_marker = false;
  model.embedding["a"] = {rat(1), rat(0)};
  model.embedding["b"] = {rat(0), rat(1)};

  {
    AhaLayer layer;
    // K a = (1,1), K b = (0,1); Q = identity.
    RatMatrix km(2, 2);
    km.at(0, 0) = 1;
    km.at(1, 0) = 1;
    km.at(1, 1) = 1;
    layer.key = AffineMap(std::move(km), {rat(0), rat(0)});
    layer.query = AffineMap::identity(2);
    layer.value = AffineMap::identity(2);
    // net((x1,x2), (v1,v2)) = ReLU(v1 - x2): the a-frequency at a-positions,
    // 0 at b-positions (their attention vector is (0,1)).
    NetBuilder nb(4);
    nb.append({RowSpec{{{2, Rational(1)}, {1, Rational(-1)}}, Rational(0)}}, Activation::Relu,
              false);
    layer.net = nb.take();
    model.layers.push_back(std::move(layer));
  }
  {
    AhaLayer layer;
    // Constant score 1 between all positions: uniform.
    layer.key = AffineMap(RatMatrix::zero(1, 1), {rat(1)});
    layer.query = AffineMap(RatMatrix::zero(1, 1), {rat(1)});
    layer.value = AffineMap::identity(1);
    // net(s, avg) = 1/2 - avg, identical at every position.
    NetBuilder nb(2);
    nb.append({RowSpec{{{1, Rational(-1)}}, rat(1, 2)}}, Activation::Identity, false);
    layer.net = nb.take();
    model.layers.push_back(std::move(layer));
  }

  model.sign_normalized_output = true;
  model.source = ModelSource{"2*x_a^2 < (x_a + x_b)^2", "sqrt-nem", kToolVersion};
  model.validate();
  return model;
}

// One uniform layer, no end marker. Without an end marker there is no 1/n
// component, so only strict homogeneous atoms c.x < 0 compose: their truth is
// the sign of c.f over the frequencies f = x/n, and and/or combine as min and
// sum of the nonnegative witness values.
AhatModel compile_homogeneous_qfpa_nem(const QfpaFormula& f, const std::vector<Letter>& alphabet) {
  if (f.vars.size() != alphabet.size())
    throw Error("compile_homogeneous_qfpa_nem: formula arity does not match the alphabet");
  const size_t m = alphabet.size();

  for_each_literal(f.root, [&](const QfpaNode& lit) {
    if (lit.atom.bound != 0)
      throw Error("compile_homogeneous_qfpa_nem: atom has nonzero constant term (" +
                  rational_to_string(lit.atom.bound) + "); only homogeneous atoms compile");
    if (!lit.negated)
      throw Error(
          "compile_homogeneous_qfpa_nem: non-strict homogeneous atom (c.x <= 0) cannot be "
          "accepted without an end marker; write the strict form c.x < 0");
  });

  AhatModel model;
  model.alphabet = alphabet;
  model.uses_end_marker = false;
  for (size_t i = 0; i < m; i++) {
    RatVec e(m, Rational(0));
    e[i] = 1;
    model.embedding[alphabet[i]] = e;
  }

  AhaLayer layer;
  layer.query = AffineMap::zero(1, m);
  layer.key = AffineMap::zero(1, m);
  layer.value = AffineMap::identity(m);

  // Net input (x_pos, f): only the frequency block is used, so the output is
  // identical at every position.
  NetBuilder nb(2 * m);
  auto freq = [&](size_t i) { return m + i; };

  // One raw value per literal occurrence: the literal !(g.x <= 0) holds iff
  // g.x > 0 iff ReLU(g.f) > 0.
  std::vector<const QfpaNode*> literals;
  for_each_literal(f.root, [&](const QfpaNode& lit) { literals.push_back(&lit); });
  std::vector<RowSpec> first;
  for (const QfpaNode* lit : literals) {
    RowSpec row;
    for (size_t i = 0; i < m; i++)
      if (lit->atom.coeffs[i] != 0) row.terms.push_back({freq(i), lit->atom.coeffs[i]});
    first.push_back(row);
  }
  std::vector<size_t> lit_comps = nb.append(first, Activation::Relu, /*keep_existing=*/false);

  size_t next_literal = 0;
  std::function<size_t(const QfpaNode&)> emit = [&](const QfpaNode& node) -> size_t {
    switch (node.kind) {
      case QfpaNode::Kind::Lit:
        return lit_comps[next_literal++];
      case QfpaNode::Kind::And: {
        size_t acc = emit(node.children[0]);
        for (size_t i = 1; i < node.children.size(); i++) {
          size_t v = emit(node.children[i]);
          // min(acc, v) = acc - ReLU(acc - v); both sides nonnegative.
          size_t over = nb.append({RowSpec{{{acc, Rational(1)}, {v, Rational(-1)}}, Rational(0)}},
                                  Activation::Relu)[0];
          acc = nb.append({RowSpec{{{acc, Rational(1)}, {over, Rational(-1)}}, Rational(0)}},
                          Activation::Identity)[0];
        }
        return acc;
      }
      case QfpaNode::Kind::Or: {
        RowSpec sum;
        for (const auto& c : node.children) sum.terms.push_back({emit(c), Rational(1)});
        return nb.append({sum}, Activation::Identity)[0];
      }
    }
    throw Error("unreachable");
  };
  nb.finish({emit(f.root)});
  layer.net = nb.take();
  model.layers.push_back(std::move(layer));

  model.sign_normalized_output = true;
  model.source = ModelSource{qfpa_to_string(f), "hom-nem", kToolVersion};
  model.validate();
  return model;
}

}  // namespace ahatc
