#include "ahatc/compiler.hpp"
#include "net_util.hpp"

namespace ahatc {

using namespace netutil;

namespace {

// The combined model carries the not-yet-simulated (or already-summarized)
// block through each segment as a pair of nonnegative components, so relu
// stages in the carried-through nets cannot clobber it:
//   A segment layout: [xA | posB | negB]   with iota_B = posB - negB
//   B segment layout: [xB | pA | qA]       with r_A    = pA - qA, pA = ReLU(r_A)
// Attention maps read only the active block; the carried block rides through
// the net of every layer.

RatVec positive_part(const RatVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); i++) out[i] = v[i] > 0 ? v[i] : Rational(0);
  return out;
}

RatVec negative_part(const RatVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); i++) out[i] = v[i] < 0 ? -v[i] : Rational(0);
  return out;
}

// Extends query/key/value to ignore `extra` trailing input components.
AffineMap widen_input(const AffineMap& f, size_t extra) {
  RatMatrix m(f.out_dim(), f.in_dim() + extra);
  for (size_t r = 0; r < f.out_dim(); r++)
    for (size_t c = 0; c < f.in_dim(); c++) m.at(r, c) = f.matrix.at(r, c);
  return AffineMap(std::move(m), f.offset);
}

// Lifts one layer of the active block: maps ignore the carried components,
// the net is rearranged to (active x, attention, carry) and block-lifted.
AhaLayer lift_layer(const AhaLayer& layer, size_t carry) {
  AhaLayer out;
  const size_t d = layer.input_dim(), k = layer.value_dim();
  out.query = widen_input(layer.query, carry);
  out.key = widen_input(layer.key, carry);
  out.value = widen_input(layer.value, carry);
  // net input: [xA (d) | carry | attention (k)] -> permute to [xA | a | carry].
  std::vector<RowSpec> perm;
  for (size_t i = 0; i < d; i++) perm.push_back(pass(i));
  for (size_t i = 0; i < k; i++) perm.push_back(pass(d + carry + i));
  for (size_t i = 0; i < carry; i++) perm.push_back(pass(d + i));
  out.net.stages.push_back(stage(std::move(perm), d + carry + k, Activation::Identity));
  FeedForwardNet lifted = lift_net_with_carry(layer.net, carry);
  for (auto& s : lifted.stages) out.net.stages.push_back(std::move(s));
  return out;
}

AhatModel combine(const AhatModel& a, const AhatModel& b, bool is_union) {
  a.validate();
  b.validate();
  if (a.alphabet != b.alphabet)
    throw Error("union/intersection: operand alphabets differ");
  if (a.uses_end_marker != b.uses_end_marker ||
      (a.uses_end_marker && a.end_marker != b.end_marker))
    throw Error("union/intersection: operand end-marker conventions differ");
  if (!a.sign_normalized_output || !b.sign_normalized_output)
    throw Error("union/intersection: operands must satisfy the sign-normalized output contract");
  if (!a.projection_deleted.empty() || !b.projection_deleted.empty())
    throw Error("union/intersection: operands with projection letters are not supported");

  const size_t db = b.embedding_dim();
  AhatModel out;
  out.alphabet = a.alphabet;
  out.uses_end_marker = a.uses_end_marker;
  out.end_marker = a.end_marker;

  auto combine_embedding = [&](const Letter& letter) {
    RatVec ea = a.embedding.at(letter);
    RatVec eb = b.embedding.at(letter);
    if (a.constant_pe) ea = vec_add(ea, *a.constant_pe);
    if (b.constant_pe) eb = vec_add(eb, *b.constant_pe);
    RatVec v = ea;
    RatVec pos = positive_part(eb), neg = negative_part(eb);
    v.insert(v.end(), pos.begin(), pos.end());
    v.insert(v.end(), neg.begin(), neg.end());
    return v;
  };
  for (const auto& letter : a.alphabet) out.embedding[letter] = combine_embedding(letter);
  if (a.uses_end_marker) out.embedding[a.end_marker] = combine_embedding(a.end_marker);

  // A segment with carry (posB, negB).
  for (const auto& layer : a.layers) out.layers.push_back(lift_layer(layer, 2 * db));

  // Summarize A: [A_out | posB | negB] -> [posB | negB | pA | qA] with
  // pA = ReLU(r_A), qA = ReLU(-r_A).
  {
    const size_t ea = a.layers.back().output_dim();
    FeedForwardNet& net = out.layers.back().net;
    const size_t w = ea + 2 * db;
    std::vector<RowSpec> select;
    for (size_t i = 0; i < 2 * db; i++) select.push_back(pass(ea + i));
    select.push_back(pass(0));
    select.push_back(RowSpec{{{0, Rational(-1)}}, Rational(0)});
    net.stages.push_back(stage(std::move(select), w, Activation::Relu));
    // posB/negB are nonnegative by construction, so the relu stage leaves
    // them intact while producing pA and qA.
  }

  // B segment with carry (pA, qA); the first layer reassembles iota_B.
  for (size_t ell = 0; ell < b.layers.size(); ell++) {
    const AhaLayer& layer = b.layers[ell];
    if (ell == 0) {
      AhaLayer first;
      const size_t d = layer.input_dim(), k = layer.value_dim();
      std::vector<RowSpec> reassemble;  // xB = posB - negB, from [posB|negB|pA|qA]
      for (size_t i = 0; i < d; i++)
        reassemble.push_back(
            RowSpec{{{i, Rational(1)}, {d + i, Rational(-1)}}, Rational(0)});
      first.query = compose_selector(layer.query, reassemble, 2 * db + 2);
      first.key = compose_selector(layer.key, reassemble, 2 * db + 2);
      first.value = compose_selector(layer.value, reassemble, 2 * db + 2);
      // net input: [posB|negB|pA|qA | attention] -> [xB | a | pA | qA]
      std::vector<RowSpec> perm;
      for (size_t i = 0; i < d; i++)
        perm.push_back(RowSpec{{{i, Rational(1)}, {d + i, Rational(-1)}}, Rational(0)});
      for (size_t i = 0; i < k; i++) perm.push_back(pass(2 * db + 2 + i));
      perm.push_back(pass(2 * db));
      perm.push_back(pass(2 * db + 1));
      first.net.stages.push_back(stage(std::move(perm), 2 * db + 2 + k, Activation::Identity));
      FeedForwardNet lifted = lift_net_with_carry(layer.net, 2);
      for (auto& s : lifted.stages) first.net.stages.push_back(std::move(s));
      out.layers.push_back(std::move(first));
    } else {
      out.layers.push_back(lift_layer(layer, 2));
    }
  }

  // Readout over [B_out | pA | qA]: union pA + ReLU(r_B), intersection
  // min(pA, ReLU(r_B)) = t - ReLU(t - pA) with t = ReLU(r_B).
  {
    const size_t eb = b.layers.back().output_dim();
    FeedForwardNet& net = out.layers.back().net;
    const size_t w = eb + 2;
    std::vector<RowSpec> select;  // [t' = r_B, pA] then relu
    select.push_back(pass(0));
    select.push_back(pass(eb));
    net.stages.push_back(stage(std::move(select), w, Activation::Relu));
    if (is_union) {
      std::vector<RowSpec> sum;
      sum.push_back(RowSpec{{{0, Rational(1)}, {1, Rational(1)}}, Rational(0)});
      net.stages.push_back(stage(std::move(sum), 2, Activation::Identity));
    } else {
      std::vector<RowSpec> diff;  // [t, pA, relu(t - pA)]
      diff.push_back(pass(0));
      diff.push_back(pass(1));
      diff.push_back(RowSpec{{{0, Rational(1)}, {1, Rational(-1)}}, Rational(0)});
      net.stages.push_back(stage(std::move(diff), 2, Activation::Relu));
      std::vector<RowSpec> fin;
      fin.push_back(RowSpec{{{0, Rational(1)}, {2, Rational(-1)}}, Rational(0)});
      net.stages.push_back(stage(std::move(fin), 3, Activation::Identity));
    }
  }

  out.sign_normalized_output = true;
  std::string op = is_union ? " | " : " & ";
  std::string fa = a.source ? a.source->formula : "?";
  std::string fb = b.source ? b.source->formula : "?";
  out.source = ModelSource{"(" + fa + ")" + op + "(" + fb + ")", "closure", kToolVersion};
  out.validate();
  return out;
}

}  // namespace

AhatModel model_union(const AhatModel& a, const AhatModel& b) { return combine(a, b, true); }

AhatModel model_intersection(const AhatModel& a, const AhatModel& b) {
  return combine(a, b, false);
}

}  // namespace ahatc
