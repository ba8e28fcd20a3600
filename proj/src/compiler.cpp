#include "ahatc/compiler.hpp"

#include "ahatc/parser.hpp"
#include "net_util.hpp"

namespace ahatc {

using namespace netutil;

std::vector<AhaLayer> build_omult_gadget(size_t width, size_t initial_component,
                                         size_t uniform_component) {
  if (initial_component >= width || uniform_component >= width)
    throw Error("build_omult_gadget: component index out of range");
  std::vector<AhaLayer> gadget;

  // Product step: scratch = ReLU(y_j - (1 - u_i)). All existing components in
  // this construction are nonnegative, so a single relu stage carries them.
  {
    AhaLayer layer;
    layer.query = AffineMap::zero(1, width);
    layer.key = AffineMap::zero(1, width);
    layer.value = AffineMap::zero(1, width);
    std::vector<RowSpec> rows = pass_range(width);
    rows.push_back(RowSpec{{{uniform_component, Rational(1)}, {initial_component, Rational(1)}},
                           Rational(-1)});
    layer.net.stages.push_back(stage(std::move(rows), width + 1, Activation::Relu));
    gadget.push_back(std::move(layer));
  }

  // Averaging step: uniform attention over the scratch component yields
  // x_i * y_j / (n+1); the scratch slot is replaced by the average.
  {
    AhaLayer layer;
    layer.query = AffineMap::zero(1, width + 1);
    layer.key = AffineMap::zero(1, width + 1);
    std::vector<RowSpec> v;
    v.push_back(pass(width));
    layer.value = rows_to_affine(v, width + 1);
    std::vector<RowSpec> rows = pass_range(width);
    rows.push_back(pass(width + 1));  // the attention average
    layer.net.stages.push_back(stage(std::move(rows), width + 2, Activation::Identity));
    gadget.push_back(std::move(layer));
  }
  return gadget;
}

AhatModel compile_poly_gt0(const Polynomial& p, const std::vector<Letter>& alphabet) {
  if (p.vars.size() != alphabet.size())
    throw Error("compile_poly_gt0: polynomial arity does not match the alphabet");
  const size_t m = alphabet.size();

  AhatModel model;
  model.alphabet = alphabet;
  model.uses_end_marker = true;
  model.end_marker = kEndMarker;
  for (const auto& a : alphabet)
    if (a == kEndMarker) throw Error("compile_poly_gt0: alphabet contains the end marker");

  // Embedding: component 0 indicates the end marker (a_0), component i the
  // i-th letter.
  for (size_t i = 0; i < m; i++) {
    RatVec e(m + 1, Rational(0));
    e[i + 1] = 1;
    model.embedding[alphabet[i]] = e;
  }
  {
    RatVec e(m + 1, Rational(0));
    e[0] = 1;
    model.embedding[kEndMarker] = e;
  }

  // Homogenize: q(x0, x) with q(1, x) = p(x); the end-marker count is 1.
  Polynomial q = homogenize(p, "x0");
  const unsigned degree = q.degree();

  // Step I: uniform frequencies. Output layout: [one-hot 0..m | f_0..f_m].
  size_t width = 2 * (m + 1);
  {
    AhaLayer layer;
    layer.query = AffineMap::zero(1, m + 1);
    layer.key = AffineMap::zero(1, m + 1);
    layer.value = AffineMap::identity(m + 1);
    std::vector<RowSpec> rows = pass_range(2 * (m + 1));
    layer.net.stages.push_back(stage(std::move(rows), 2 * (m + 1), Activation::Identity));
    model.layers.push_back(std::move(layer));
  }

  // Steps II+III: per monomial, a chain of omult gadgets computing
  // x_{i1}...x_{id} / (n+1)^d. The frequency components already hold the
  // degree-1 prefixes.
  std::vector<std::pair<size_t, Integer>> readout;  // (component, coefficient)
  for (const auto& [exps, coeff] : q.monomials) {
    std::vector<size_t> factors;
    for (size_t i = 0; i < exps.size(); i++)
      for (unsigned k = 0; k < exps[i]; k++) factors.push_back(i);
    if (factors.empty()) continue;  // constant q: handled by the readout offset
    size_t current = (m + 1) + factors[0];  // frequency component of the first factor
    for (size_t t = 1; t < factors.size(); t++) {
      std::vector<AhaLayer> gadget = build_omult_gadget(width, factors[t], current);
      for (auto& layer : gadget) model.layers.push_back(std::move(layer));
      current = width;  // the appended component
      width += 1;
    }
    readout.push_back({current, coeff});
  }

  // Readout: out[0] = q(x_0..x_m) / (n+1)^degree, strictly positive exactly on
  // acceptance. A constant q contributes through the offset.
  {
    RowSpec row;
    if (degree == 0) row.offset = Rational(q.constant_term());
    for (const auto& [comp, coeff] : readout) row.terms.push_back({comp, Rational(coeff)});
    model.layers.back().net.stages.push_back(stage({row}, width, Activation::Identity));
  }

  model.sign_normalized_output = true;
  model.source = ModelSource{p.to_string() + " > 0", "poly_gt0", kToolVersion};
  model.validate();
  return model;
}

namespace {

AhatModel compile_semialg_node(const SemiAlgNode& node, const std::vector<Letter>& alphabet) {
  switch (node.kind) {
    case SemiAlgNode::Kind::Atom: {
      if (node.rel != Rel::Gt) throw Error("compile_semialg: formula must be normalized first");
      return compile_poly_gt0(node.poly, alphabet);
    }
    case SemiAlgNode::Kind::Not:
      throw Error("compile_semialg: formula must be normalized first");
    case SemiAlgNode::Kind::And:
    case SemiAlgNode::Kind::Or: {
      AhatModel acc = compile_semialg_node(node.children[0], alphabet);
      for (size_t i = 1; i < node.children.size(); i++) {
        AhatModel next = compile_semialg_node(node.children[i], alphabet);
        acc = node.kind == SemiAlgNode::Kind::And ? model_intersection(acc, next)
                                                  : model_union(acc, next);
      }
      return acc;
    }
  }
  throw Error("unreachable");
}

}  // namespace

AhatModel compile_semialg(const SemiAlgFormula& f, const std::vector<Letter>& alphabet) {
  if (f.vars.size() != alphabet.size())
    throw Error("compile_semialg: formula arity does not match the alphabet");
  SemiAlgFormula n = is_normalized(f) ? f : normalize_semialg(f);
  AhatModel model = compile_semialg_node(n.root, alphabet);
  model.source = ModelSource{semialg_to_string(f), "semialg", kToolVersion};
  model.validate();
  return model;
}

}  // namespace ahatc
