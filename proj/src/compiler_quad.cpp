#include <algorithm>

#include <json.hpp>

#include "ahatc/compiler.hpp"
#include "ahatc/model_io.hpp"
#include "net_util.hpp"

namespace ahatc {

using namespace netutil;
using nlohmann::json;

// Two attention layers for a conjunction of strict simple quadratic
// inequalities q_i(x) < 0. Letters: one per variable (counts), one marker
// per inequality (must occur exactly once), plus the end marker.
//
// Layer 1 is uniform: it appends the frequency vector f and, at the position
// of marker i with inequality a*Xw*Xx + b*Xy + c*Xz + d < 0, the factor
// vector v with v[w] = a*x_x/(n+1) and v[M] = (b*x_y + c*x_z + d)/(n+1).
// Layer 2 scores position q against the shared key (f_vars, f_$), which
// evaluates q_i(x)/(n+1)^2 at marker positions and 0 elsewhere; its value map
// is the marker indicator, so the average g is 0 iff no violating marker won
// the argmax. The readout y = f_$ - g - sum_i |f_marker_i - f_$| is positive
// exactly on solutions with every marker occurring once.
CompiledLanguage compile_quadratic_system_two_layers(const std::vector<Polynomial>& system,
                                                     const std::vector<Letter>& variable_letters) {
  if (system.empty()) throw Error("compile_quadratic_system_two_layers: empty system");
  const size_t M = variable_letters.size();
  for (const auto& q : system)
    if (q.vars.size() != M)
      throw Error("compile_quadratic_system_two_layers: inequality arity mismatch");
  std::vector<SimpleQuad> quads;
  for (const auto& q : system) quads.push_back(decompose_simple_quadratic(q));
  const size_t t = system.size();

  std::vector<Letter> markers;
  for (size_t i = 0; i < t; i++) markers.push_back("B" + std::to_string(i + 1));
  for (const auto& letter : variable_letters) {
    if (letter == kEndMarker)
      throw Error("compile_quadratic_system_two_layers: variable letter clashes with end marker");
    if (std::find(markers.begin(), markers.end(), letter) != markers.end())
      throw Error("compile_quadratic_system_two_layers: variable letter '" + letter +
                  "' clashes with a marker name");
  }

  AhatModel model;
  model.alphabet = variable_letters;
  model.alphabet.insert(model.alphabet.end(), markers.begin(), markers.end());
  model.uses_end_marker = true;
  model.end_marker = kEndMarker;
  const size_t d0 = M + t + 1;
  for (size_t i = 0; i < model.alphabet.size(); i++) {
    RatVec e(d0, Rational(0));
    e[i] = 1;
    model.embedding[model.alphabet[i]] = e;
  }
  {
    RatVec e(d0, Rational(0));
    e[M + t] = 1;
    model.embedding[kEndMarker] = e;
  }

  // ---- Layer 1: frequencies + factor collection -----------------------------
  {
    AhaLayer layer;
    layer.query = AffineMap::zero(1, d0);
    layer.key = AffineMap::zero(1, d0);
    layer.value = AffineMap::identity(d0);

    NetBuilder nb(2 * d0);
    auto u_idx = [&](size_t i) { return i; };
    auto f_idx = [&](size_t i) { return d0 + i; };
    const size_t f_end = f_idx(M + t);

    // Gated products u_marker * f[s] = ReLU(f[s] + u_marker - 1), one per
    // needed (marker, source) pair.
    struct Product {
      size_t marker;
      size_t source;  // f-layout index
    };
    std::vector<Product> products;
    auto product_of = [&](size_t marker, size_t source) {
      for (size_t p = 0; p < products.size(); p++)
        if (products[p].marker == marker && products[p].source == source) return p;
      products.push_back(Product{marker, source});
      return products.size() - 1;
    };
    struct Contribution {
      size_t slot;  // v-layout index in [0, M]
      size_t product;
      Integer coeff;
    };
    std::vector<Contribution> contributions;
    for (size_t i = 0; i < t; i++) {
      const SimpleQuad& q = quads[i];
      if (q.a != 0)
        contributions.push_back(
            {static_cast<size_t>(q.w), product_of(i, f_idx(q.x)), q.a});
      if (q.b != 0)
        contributions.push_back({M, product_of(i, f_idx(q.y)), q.b});
      if (q.c != 0)
        contributions.push_back({M, product_of(i, f_idx(q.z)), q.c});
      if (q.d != 0) contributions.push_back({M, product_of(i, f_end), q.d});
    }

    std::vector<RowSpec> product_rows;
    for (const auto& p : products)
      product_rows.push_back(RowSpec{{{p.source, Rational(1)}, {u_idx(M + p.marker), Rational(1)}},
                                     Rational(-1)});
    std::vector<size_t> product_comps = nb.append(product_rows, Activation::Relu);

    // Assemble [u, f, v].
    std::vector<RowSpec> out_rows;
    for (size_t i = 0; i < 2 * d0; i++) out_rows.push_back(pass(i));
    std::vector<RowSpec> v_rows(M + 1);
    for (const auto& c : contributions)
      v_rows[c.slot].terms.push_back({product_comps[c.product], Rational(c.coeff)});
    for (auto& row : v_rows) out_rows.push_back(std::move(row));
    nb.append(out_rows, Activation::Identity, /*keep_existing=*/false);
    layer.net = nb.take();
    model.layers.push_back(std::move(layer));
  }

  // ---- Layer 2: inequalities as scores + occurrence checks ------------------
  {
    const size_t din = 2 * d0 + M + 1;
    AhaLayer layer;
    auto f_idx = [&](size_t i) { return d0 + i; };
    auto v_idx = [&](size_t i) { return 2 * d0 + i; };

    // Key: the uniform vector (f_1, .., f_M, f_$); query: the factor vector v.
    std::vector<RowSpec> key_rows;
    for (size_t j = 0; j < M; j++) key_rows.push_back(pass(f_idx(j)));
    key_rows.push_back(pass(f_idx(M + t)));
    layer.key = rows_to_affine(key_rows, din);
    std::vector<RowSpec> query_rows;
    for (size_t j = 0; j <= M; j++) query_rows.push_back(pass(v_idx(j)));
    layer.query = rows_to_affine(query_rows, din);

    // Value: 1 at marker positions, 0 elsewhere.
    RowSpec marker_indicator;
    for (size_t i = 0; i < t; i++) marker_indicator.terms.push_back({M + i, Rational(1)});
    layer.value = rows_to_affine({marker_indicator}, din);

    // Readout: y = f_$ - g - sum_i |f_marker_i - f_$|.
    NetBuilder nb(din + 1);
    const size_t g_idx = din;
    std::vector<RowSpec> parts;
    for (size_t i = 0; i < t; i++) {
      parts.push_back(
          RowSpec{{{f_idx(M + i), Rational(1)}, {f_idx(M + t), Rational(-1)}}, Rational(0)});
      parts.push_back(
          RowSpec{{{f_idx(M + i), Rational(-1)}, {f_idx(M + t), Rational(1)}}, Rational(0)});
    }
    parts.push_back(pass(f_idx(M + t)));  // f_$
    parts.push_back(pass(g_idx));         // g, a nonnegative average
    std::vector<size_t> comps = nb.append(parts, Activation::Relu, /*keep_existing=*/false);
    RowSpec y;
    y.terms.push_back({comps[2 * t], Rational(1)});
    y.terms.push_back({comps[2 * t + 1], Rational(-1)});
    for (size_t i = 0; i < 2 * t; i++) y.terms.push_back({comps[i], Rational(-1)});
    nb.append({y}, Activation::Identity, /*keep_existing=*/false);
    layer.net = nb.take();
    model.layers.push_back(std::move(layer));
  }

  model.projection_deleted.insert(markers.begin(), markers.end());
  model.sign_normalized_output = true;
  {
    std::string text;
    for (size_t i = 0; i < system.size(); i++)
      text += (i ? " & " : "") + system[i].to_string() + " < 0";
    model.source = ModelSource{text, "quad2", kToolVersion};
  }
  model.validate();

  CompiledLanguage c;
  c.model = std::move(model);
  c.original_letters = variable_letters;
  c.variable_letters = variable_letters;
  c.marker_letters = markers;
  return c;
}

CompiledLanguage compile_diophantine_equation(const Polynomial& p,
                                              const std::vector<Letter>& original_letters) {
  if (p.vars.size() != original_letters.size())
    throw Error("compile_diophantine_equation: polynomial arity does not match the alphabet");
  QuadraticReduction reduction = reduce_to_simple_quadratics(p);
  std::vector<Letter> letters = original_letters;
  for (const auto& def : reduction.fresh) {
    if (std::find(letters.begin(), letters.end(), def.name) != letters.end())
      throw Error("compile_diophantine_equation: alphabet letter '" + def.name +
                  "' collides with a fresh variable name");
    letters.push_back(def.name);
  }
  CompiledLanguage c = compile_quadratic_system_two_layers(reduction.inequalities, letters);
  c.original_letters = original_letters;
  c.fresh = reduction.fresh;
  c.model.source = ModelSource{p.to_string() + " = 0", "quad2", kToolVersion};
  return c;
}

namespace {

long long to_count(const Integer& value, const std::string& what) {
  if (value < 0)
    throw Error("membership_via_projection: " + what + " is negative (" + value.get_str() + ")");
  if (!value.fits_slong_p())
    throw Error("membership_via_projection: " + what + " does not fit a machine count");
  return value.get_si();
}

bool run_with_counts(const CompiledLanguage& c, const std::vector<long long>& variable_counts) {
  Word w;
  for (size_t i = 0; i < c.variable_letters.size(); i++)
    for (long long k = 0; k < variable_counts[i]; k++) w.push_back(c.variable_letters[i]);
  for (const auto& marker : c.marker_letters) w.push_back(marker);
  return run_ahat(c.model, w).accept;
}

}  // namespace

bool membership_via_projection(const CompiledLanguage& c, const ParikhVector& v,
                               std::optional<long long> witness_bound) {
  if (v.size() != c.original_letters.size())
    throw Error("membership_via_projection: vector arity does not match the original letters");
  const size_t fresh_count = c.variable_letters.size() - c.original_letters.size();
  if (fresh_count == 0) {
    std::vector<long long> counts(v.begin(), v.end());
    return run_with_counts(c, counts);
  }
  if (c.fresh.size() == fresh_count) {
    // Chain-determined: compute the unique candidate witness directly.
    std::vector<Integer> values = to_integers(v);
    for (const auto& def : c.fresh) {
      std::vector<Integer> point(values.begin(), values.begin() + def.definition.vars.size());
      Integer val = def.definition.eval(point);
      if (val < 0) return false;  // no natural witness exists on this chain
      values.push_back(val);
    }
    std::vector<long long> counts;
    for (size_t i = 0; i < values.size(); i++)
      counts.push_back(to_count(values[i], "count of '" + c.variable_letters[i] + "'"));
    return run_with_counts(c, counts);
  }
  if (!witness_bound)
    throw Error(
        "membership_via_projection: fresh variables are not chain-determined; a witness bound "
        "is required");
  // Bounded existential search over the fresh counts.
  std::vector<long long> counts(v.begin(), v.end());
  counts.resize(c.variable_letters.size(), 0);
  const size_t base = c.original_letters.size();
  for (;;) {
    if (run_with_counts(c, counts)) return true;
    size_t i = base;
    while (i < counts.size() && counts[i] == *witness_bound) counts[i++] = 0;
    if (i == counts.size()) return false;
    counts[i]++;
  }
}

std::string save_compiled_language(const CompiledLanguage& c) {
  json j = json::parse(save_model(c.model));
  json compiled;
  compiled["original_letters"] = c.original_letters;
  compiled["variable_letters"] = c.variable_letters;
  compiled["marker_letters"] = c.marker_letters;
  json fresh = json::array();
  for (const auto& def : c.fresh) {
    json jp;
    jp["name"] = def.name;
    jp["vars"] = def.definition.vars;
    json monos = json::array();
    for (const auto& [e, coeff] : def.definition.monomials)
      monos.push_back(json{{"exps", e}, {"coeff", coeff.get_str()}});
    jp["monomials"] = monos;
    fresh.push_back(jp);
  }
  compiled["fresh"] = fresh;
  j["compiled"] = compiled;
  return j.dump(2) + "\n";
}

bool file_has_compiled_section(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  return j.is_object() && j.contains("compiled");
}

CompiledLanguage load_compiled_language(const std::string& json_text) {
  CompiledLanguage c;
  c.model = load_model(json_text);
  json j = json::parse(json_text);
  if (!j.contains("compiled"))
    throw Error("compiled-language file: missing 'compiled' section");
  const json& jc = j.at("compiled");
  for (const auto& s : jc.at("original_letters")) c.original_letters.push_back(s.get<std::string>());
  for (const auto& s : jc.at("variable_letters")) c.variable_letters.push_back(s.get<std::string>());
  for (const auto& s : jc.at("marker_letters")) c.marker_letters.push_back(s.get<std::string>());
  for (const auto& jf : jc.at("fresh")) {
    FreshDef def;
    def.name = jf.at("name").get<std::string>();
    std::vector<std::string> vars;
    for (const auto& v : jf.at("vars")) vars.push_back(v.get<std::string>());
    def.definition = Polynomial(vars);
    for (const auto& jm : jf.at("monomials")) {
      std::vector<unsigned> exps;
      for (const auto& e : jm.at("exps")) exps.push_back(e.get<unsigned>());
      def.definition.add_monomial(exps, Integer(jm.at("coeff").get<std::string>(), 10));
    }
    c.fresh.push_back(std::move(def));
  }
  return c;
}

}  // namespace ahatc
