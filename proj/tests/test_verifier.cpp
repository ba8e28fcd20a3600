#include <doctest.h>

#include "ahatc/compiler.hpp"
#include "ahatc/parser.hpp"
#include "ahatc/verifier.hpp"

using namespace ahatc;

namespace {
const std::vector<Letter> AB = {"a", "b"};
}

TEST_CASE("enumerate_parikh: graded lexicographic order, zero excluded") {
  CHECK(enumerate_parikh(2, 2) ==
        std::vector<ParikhVector>{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
  CHECK(enumerate_parikh(1, 3) == std::vector<ParikhVector>{{1}, {2}, {3}});
  CHECK(enumerate_parikh(3, 1) == std::vector<ParikhVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK_THROWS_AS(enumerate_parikh(2, 0), Error);
}

TEST_CASE("enumerate_parikh count equals C(N+m, m) - 1") {
  for (size_t m = 1; m <= 4; m++)
    for (long long n = 1; n <= 30; n += (m >= 3 ? 7 : 1)) {
      Integer expect;
      mpz_bin_uiui(expect.get_mpz_t(), static_cast<unsigned long>(n + m),
                   static_cast<unsigned long>(m));
      expect -= 1;
      CHECK(Integer(static_cast<long>(enumerate_parikh(m, n).size())) == expect);
    }
  CHECK(enumerate_parikh_with_zero(2, 3).size() == enumerate_parikh(2, 3).size() + 1);
}

TEST_CASE("check_equivalence is exact: zero mismatches on a faithful pair") {
  AhatModel m = compile_semialg(parse_semialg("x_a - x_b > 0", AB), AB);
  SemiAlgFormula f = parse_semialg("x_a - x_b > 0", AB);
  auto report = check_equivalence(m, f, 20, 100, 42);
  CHECK(report.equivalent());
  CHECK(report.vectors_checked == 230);  // C(22,2) - 1
  CHECK(report.permutation_trials == 100);
  CHECK(report.seed == 42);
}

TEST_CASE("check_equivalence localizes mismatches: the off-by-one boundary") {
  // Model for x_a - x_b > 0 against the formula x_a - x_b + 1 > 0 (i.e. >= 0):
  // mismatches exactly on the diagonal x_a = x_b.
  AhatModel m = compile_semialg(parse_semialg("x_a - x_b > 0", AB), AB);
  SemiAlgFormula wrong = parse_semialg("x_a - x_b + 1 > 0", AB);
  auto report = check_equivalence(m, wrong, 20);
  CHECK_FALSE(report.equivalent());
  for (const auto& mm : report.mismatches) {
    CHECK(mm.vector[0] == mm.vector[1]);
    CHECK_FALSE(mm.model_verdict);
    CHECK(mm.formula_verdict);
  }
  CHECK(report.mismatches.size() == 10);  // (1,1) .. (10,10)
}

TEST_CASE("serial and parallel sweeps agree and are deterministic") {
  AhatModel m = compile_semialg(parse_semialg("(x_a + x_b)^2 - 2*x_a^2 > 0", AB), AB);
  SemiAlgFormula f = parse_semialg("(x_a + x_b)^2 - 2*x_a^2 > 0", AB);
  auto serial = check_equivalence(m, f, 15, 10, 3, /*parallel=*/false);
  auto parallel = check_equivalence(m, f, 15, 10, 3, /*parallel=*/true);
  CHECK(serial.vectors_checked == parallel.vectors_checked);
  CHECK(serial.mismatches.size() == parallel.mismatches.size());
  CHECK(serial.to_json(AB) == parallel.to_json(AB));
  auto again = check_equivalence(m, f, 15, 10, 3, true);
  CHECK(parallel.to_json(AB) == again.to_json(AB));
}

TEST_CASE("bounded_emptiness finds the least witness in graded-lex order") {
  AhatModel m = compile_semialg(parse_semialg("x_a - 2 > 0", AB), AB);
  auto result = bounded_emptiness(m, 10);
  REQUIRE(result.witness.has_value());
  CHECK(*result.witness == ParikhVector{3, 0});

  AhatModel empty = compile_poly_gt0(parse_polynomial("-1", AB), AB);
  auto none = bounded_emptiness(empty, 10);
  CHECK_FALSE(none.witness.has_value());
  CHECK(none.note.find("NOT a proof of emptiness") != std::string::npos);
}

TEST_CASE("bounded_emptiness over a compiled language reports zero and nonzero witnesses") {
  std::vector<std::string> vars = {"X1", "X2", "X3"};
  Polynomial p = Polynomial::variable(vars, 0).pow(2) + Polynomial::variable(vars, 1).pow(2) -
                 Polynomial::variable(vars, 2).pow(2);
  CompiledLanguage c = compile_diophantine_equation(p, {"X1", "X2", "X3"});
  auto result = bounded_emptiness(c, 12);
  REQUIRE(result.witness.has_value());
  CHECK(*result.witness == ParikhVector{0, 0, 0});  // markers make the word nonempty
  REQUIRE(result.nonzero_witness.has_value());
  CHECK(*result.nonzero_witness == ParikhVector{1, 0, 1});  // 1 + 0 = 1 precedes (3,4,5)
}

TEST_CASE("permutation invariance of compiled and hand-built models") {
  AhatModel sqrt_nem = compile_sqrt_two_layer_nem();
  auto report = check_permutation_invariance(sqrt_nem, 10, 100, 7);
  CHECK(report.invariant());
  CHECK(report.trials == 100 * static_cast<long long>(enumerate_parikh(2, 10).size()));

  AhatModel maj = compile_semialg(parse_semialg("x_a - x_b > 0", AB), AB);
  bool aab = run_ahat(maj, word_from_string("aab", AB)).accept;
  CHECK(run_ahat(maj, word_from_string("aba", AB)).accept == aab);
  CHECK(run_ahat(maj, word_from_string("baa", AB)).accept == aab);
}

TEST_CASE("equivalence reports serialize with all fields") {
  AhatModel m = compile_semialg(parse_semialg("x_a - x_b > 0", AB), AB);
  SemiAlgFormula f = parse_semialg("x_a - x_b > 0", AB);
  auto report = check_equivalence(m, f, 6, 5, 9);
  std::string json = report.to_json(AB);
  for (const char* field : {"\"bound\"", "\"vectors_checked\"", "\"mismatches\"",
                            "\"permutation_trials\"", "\"permutation_failures\"", "\"seed\"",
                            "\"equivalent\""})
    CHECK(json.find(field) != std::string::npos);
}
