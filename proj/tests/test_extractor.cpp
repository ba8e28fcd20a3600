#include <doctest.h>

#include "ahatc/compiler.hpp"
#include "ahatc/extractor.hpp"
#include "ahatc/parser.hpp"
#include "ahatc/verifier.hpp"

using namespace ahatc;

namespace {

const std::vector<Letter> AB = {"a", "b"};

// Exhaustive agreement of a formula with a model, exact, on sum <= bound.
template <typename Formula>
void check_formula_matches_model(const Formula& f, const AhatModel& m, long long bound) {
  for (const auto& v : enumerate_parikh(m.alphabet.size(), bound)) {
    bool model_v = run_ahat(m, canonical_word(v, m.alphabet)).accept;
    bool formula_v;
    if constexpr (std::is_same_v<Formula, SemiAlgFormula>)
      formula_v = eval_semialg(f, v);
    else
      formula_v = eval_qfpa(f, v);
    CAPTURE(v[0]);
    CAPTURE(v[1]);
    CHECK(model_v == formula_v);
  }
}

}  // namespace

TEST_CASE("extract_semialg: compiled MAJ round trips") {
  SemiAlgFormula source = parse_semialg("x_a - x_b > 0", AB);
  AhatModel m = compile_semialg(source, AB);
  ExtractionResult r = extract_semialg(m);
  CHECK(is_normalized(r.formula));
  check_formula_matches_model(r.formula, m, 15);
  // ... and therefore agrees with the source predicate.
  for (const auto& v : enumerate_parikh(2, 15))
    CHECK(eval_semialg(r.formula, v) == eval_semialg(source, v));
}

TEST_CASE("extract_semialg: compiled SQRT round trips") {
  SemiAlgFormula source = parse_semialg("(x_a + x_b)^2 - 2*x_a^2 > 0", AB);
  AhatModel m = compile_semialg(source, AB);
  ExtractionResult r = extract_semialg(m);
  check_formula_matches_model(r.formula, m, 15);
  for (const auto& v : enumerate_parikh(2, 15))
    CHECK(eval_semialg(r.formula, v) == eval_semialg(source, v));
}

TEST_CASE("extract_semialg: constant-reject model gives the empty formula") {
  AhatModel m = compile_poly_gt0(parse_polynomial("-1", AB), AB);
  ExtractionResult r = extract_semialg(m);
  for (const auto& v : enumerate_parikh(2, 10)) CHECK_FALSE(eval_semialg(r.formula, v));
}

TEST_CASE("extract_semialg: union/intersection models round trip") {
  SemiAlgFormula fa = parse_semialg("x_a - x_b > 0", AB);
  SemiAlgFormula fb = parse_semialg("x_b - 2 > 0", AB);
  AhatModel mu = model_union(compile_semialg(fa, AB), compile_semialg(fb, AB));
  ExtractionResult r = extract_semialg(mu);
  check_formula_matches_model(r.formula, mu, 12);
}

TEST_CASE("extract_semialg: hand-built SQRT-NEM model (non-uniform layer)") {
  AhatModel m = compile_sqrt_two_layer_nem();
  ExtractionResult r = extract_semialg(m);
  SemiAlgFormula source = parse_semialg("(x_a + x_b)^2 - 2*x_a^2 > 0", AB);
  for (const auto& v : enumerate_parikh(2, 15))
    CHECK(eval_semialg(r.formula, v) == eval_semialg(source, v));
}

TEST_CASE("extraction branches: soundness of recorded choices") {
  SemiAlgFormula source = parse_semialg("(x_a + x_b)^2 - 2*x_a^2 > 0", AB);
  AhatModel m = compile_semialg(source, AB);
  ExtractionResult r = extract_semialg(m, 1 << 20, 12);
  REQUIRE_FALSE(r.branches.empty());
  long long checked = 0;
  for (const auto& br : r.branches) {
    for (const auto& v : enumerate_parikh(2, 12)) {
      if (!br.guards_hold(v)) continue;
      checked++;
      EvalResult run = run_ahat(m, canonical_word(v, m.alphabet));
      const EvalTrace& t = run.trace;
      REQUIRE(t.classes == br.classes);
      REQUIRE(t.layers.size() == br.argmax.size());
      for (size_t l = 0; l < t.layers.size(); l++) {
        for (size_t c = 0; c < t.classes.size(); c++) {
          // Argmax sets must match the branch choice exactly.
          CHECK(t.layers[l].argmax[c] == br.argmax[l][c]);
          // Relu signs must be compatible with the recorded codes.
          REQUIRE(t.layers[l].relu_signs[c].size() == br.relu[l][c].size());
          for (size_t i = 0; i < br.relu[l][c].size(); i++) {
            int code = br.relu[l][c][i];
            int sign = t.layers[l].relu_signs[c][i];
            if (code == 1) CHECK(sign > 0);
            if (code == -1) CHECK(sign <= 0);
            if (code == 2) CHECK(sign >= 0);
            if (code == -2) CHECK(sign <= 0);
          }
        }
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("extraction branches: completeness over the grid") {
  SemiAlgFormula source = parse_semialg("x_a - x_b > 0", AB);
  AhatModel m = compile_semialg(source, AB);
  ExtractionResult r = extract_semialg(m);
  for (const auto& v : enumerate_parikh(2, 12)) {
    bool covered = false;
    for (const auto& br : r.branches)
      if (br.guards_hold(v)) covered = true;
    CAPTURE(v[0]);
    CAPTURE(v[1]);
    CHECK(covered);
  }
}

TEST_CASE("extract_qfpa_one_layer round trips the one-layer compiler") {
  for (const char* text : {"x_a <= 3", "x_b + 1 <= x_a", "(x_a <= 3) & !(x_a <= 1)",
                           "!(x_a <= 0) | (x_b <= 1)", "1/2*x_a - 1/3*x_b <= 5/6"}) {
    QfpaFormula f = parse_qfpa(text, AB);
    AhatModel m = compile_qfpa_one_layer(f, AB);
    QfpaExtractionResult r = extract_qfpa_one_layer(m);
    for (const auto& v : enumerate_parikh(2, 20)) {
      CAPTURE(text);
      CAPTURE(v[0]);
      CAPTURE(v[1]);
      CHECK(eval_qfpa(r.formula, v) == eval_qfpa(f, v));
    }
  }
}

TEST_CASE("extract_qfpa_one_layer: constant-true readout") {
  QfpaFormula f = parse_qfpa("0 <= 1", AB);  // trivially true
  AhatModel m = compile_qfpa_one_layer(f, AB);
  QfpaExtractionResult r = extract_qfpa_one_layer(m);
  for (const auto& v : enumerate_parikh(2, 12)) CHECK(eval_qfpa(r.formula, v));
}

TEST_CASE("extract_qfpa_one_layer rejects unsuitable models") {
  AhatModel sqrt_em = compile_semialg(parse_semialg("(x_a + x_b)^2 - 2*x_a^2 > 0", AB), AB);
  CHECK_THROWS_WITH_AS(extract_qfpa_one_layer(sqrt_em), doctest::Contains("attention layers"),
                       Error);
  AhatModel nem = compile_homogeneous_qfpa_nem(parse_qfpa("x_b - x_a < 0", AB), AB);
  CHECK_THROWS_WITH_AS(extract_qfpa_one_layer(nem), doctest::Contains("end marker"), Error);
}

TEST_CASE("branch budget errors out with the estimate") {
  AhatModel m = compile_semialg(parse_semialg("(x_a + x_b)^2 - 2*x_a^2 > 0", AB), AB);
  CHECK_THROWS_WITH_AS(extract_semialg(m, 1), doctest::Contains("budget"), Error);
}

TEST_CASE("clear_denominators on the symbolic algebra") {
  std::vector<std::string> vars = {"x_a", "x_b"};
  std::vector<bool> support = {true, true};
  Polynomial xa = Polynomial::variable(vars, 0);
  Polynomial xb = Polynomial::variable(vars, 1);
  Polynomial one = Polynomial::constant(vars, 1);

  SUBCASE("p/q > 0 with certified q becomes p > 0") {
    SymbolicRational v{xa - xb, {xa + xb + one}};
    CHECK(clear_denominators(v, support, vars) == xa - xb);
  }
  SUBCASE("uncertified denominators are errors") {
    SymbolicRational v{xa, {xa - xb}};  // x_a - x_b is not sign-definite
    CHECK_THROWS_WITH_AS(clear_denominators(v, support, vars), doctest::Contains("certified"),
                         Error);
    // A factor positive only thanks to an occurring letter loses its
    // certificate when that letter is absent.
    SymbolicRational w{xa, {xb}};
    CHECK_NOTHROW(clear_denominators(w, support, vars));
    CHECK_THROWS_AS(clear_denominators(w, {true, false}, vars), Error);
  }
  SUBCASE("p/q = r/s cross-multiplies") {
    SymbolicRational a{xa, {xa + one}};
    SymbolicRational b{xb, {xb + one}};
    Polynomial d = cross_difference(a, b);
    // x_a (x_b + 1) - x_b (x_a + 1) = x_a - x_b
    CHECK(d == xa - xb);
  }
  SUBCASE("shared denominators cancel in comparisons") {
    SymbolicRational s1{xa * Integer(3), {xa + xb}};
    SymbolicRational s2{xb * Integer(2), {xa + xb}};
    CHECK(cross_difference(s1, s2) == xa * Integer(3) - xb * Integer(2));
  }
}

TEST_CASE("is_certified_positive follows the support") {
  std::vector<std::string> vars = {"x_a", "x_b"};
  Polynomial xa = Polynomial::variable(vars, 0);
  Polynomial xb = Polynomial::variable(vars, 1);
  Polynomial one = Polynomial::constant(vars, 1);
  CHECK(is_certified_positive(xa + xb + one, {false, false}));  // the constant carries it
  CHECK(is_certified_positive(xa, {true, false}));
  CHECK_FALSE(is_certified_positive(xa, {false, true}));
  CHECK_FALSE(is_certified_positive(xa - xb, {true, true}));
  CHECK_FALSE(is_certified_positive(Polynomial(vars), {true, true}));  // zero
}
