// Benchmark for the two performance-relevant paths:
//   1. the equivalence sweep, OpenMP-parallel vs the serial reference;
//   2. the class-collapsed evaluator vs the literal per-position evaluator.
// Both pairs must agree exactly; the benchmark reports wall times.

#include <chrono>
#include <cstring>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ahatc/compiler.hpp"
#include "ahatc/parser.hpp"
#include "ahatc/verifier.hpp"

using namespace ahatc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_sweep(long long max_sum) {
  const std::vector<Letter> ab = {"a", "b"};
  SemiAlgFormula f = parse_semialg("(x_a + x_b)^2 - 2*x_a^2 > 0", ab);
  AhatModel model = compile_semialg(f, ab);

  auto t0 = std::chrono::steady_clock::now();
  auto serial = check_equivalence(model, f, max_sum, 0, 0, /*parallel=*/false);
  double serial_s = seconds_since(t0);

  auto t1 = std::chrono::steady_clock::now();
  auto parallel = check_equivalence(model, f, max_sum, 0, 0, /*parallel=*/true);
  double parallel_s = seconds_since(t1);

  if (serial.to_json(ab) != parallel.to_json(ab)) {
    std::cerr << "BUG: serial and parallel sweeps disagree\n";
    std::exit(1);
  }
  std::cout << "equivalence sweep (SQRT model, sum <= " << max_sum << ", "
            << serial.vectors_checked << " vectors)\n"
            << "  serial:   " << serial_s << " s\n"
            << "  parallel: " << parallel_s << " s  (speedup " << serial_s / parallel_s << ")\n";
}

void bench_evaluator(long long max_len) {
  const std::vector<Letter> letters = {"X1", "X2", "X3"};
  std::vector<std::string> vars = count_variables(letters);
  Polynomial p = parse_polynomial("x_X1^2 + x_X2^2 - x_X3^2", letters);
  CompiledLanguage c = compile_diophantine_equation(p, letters);

  // Build one representative long word: the (3,4,5) witness plus padding.
  std::vector<Integer> values = {Integer(3), Integer(4), Integer(5)};
  for (const auto& def : c.fresh) {
    std::vector<Integer> point(values.begin(), values.begin() + def.definition.vars.size());
    values.push_back(def.definition.eval(point));
  }
  Word w;
  for (size_t i = 0; i < c.variable_letters.size(); i++)
    for (Integer k = 0; k < values[i] && static_cast<long long>(w.size()) < max_len; k++)
      w.push_back(c.variable_letters[i]);
  for (const auto& marker : c.marker_letters) w.push_back(marker);

  auto t0 = std::chrono::steady_clock::now();
  bool fast = run_ahat(c.model, w).accept;
  double fast_s = seconds_since(t0);

  auto t1 = std::chrono::steady_clock::now();
  bool reference = run_ahat_reference(c.model, w);
  double reference_s = seconds_since(t1);

  if (fast != reference) {
    std::cerr << "BUG: class-collapsed and per-position evaluators disagree\n";
    std::exit(1);
  }
  std::cout << "model evaluation (two-layer Pythagorean model, |w| = " << w.size() << ")\n"
            << "  per-position reference: " << reference_s << " s\n"
            << "  class-collapsed:        " << fast_s << " s  (speedup "
            << reference_s / fast_s << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  bool smoke = argc > 1 && std::strcmp(argv[1], "--smoke") == 0;
#ifdef _OPENMP
  std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "openmp: not available (serial build)\n";
#endif
  bench_sweep(smoke ? 12 : 40);
  bench_evaluator(smoke ? 40 : 400);
  return 0;
}
