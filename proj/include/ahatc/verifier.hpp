#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ahatc/compiler.hpp"
#include "ahatc/formula.hpp"

namespace ahatc {

// All v in N^m with 1 <= sum(v) <= max_sum, graded lexicographic: grades
// ascending, first component descending within a grade. Exactly
// C(max_sum + m, m) - 1 vectors.
std::vector<ParikhVector> enumerate_parikh(size_t m, long long max_sum);
// Same but including the zero vector (compiled languages with markers admit it).
std::vector<ParikhVector> enumerate_parikh_with_zero(size_t m, long long max_sum);

struct Mismatch {
  ParikhVector vector;
  bool model_verdict;
  bool formula_verdict;
};

struct PermutationFailure {
  Word canonical;
  Word permuted;
  bool canonical_verdict;
  bool permuted_verdict;
};

struct EquivalenceReport {
  long long bound = 0;
  long long vectors_checked = 0;
  std::vector<Mismatch> mismatches;
  long long permutation_trials = 0;
  std::vector<PermutationFailure> permutation_failures;
  std::uint64_t seed = 0;

  bool equivalent() const { return mismatches.empty() && permutation_failures.empty(); }
  std::string to_json(const std::vector<Letter>& alphabet) const;
};

// Runs the model on the canonical word of every enumerated vector and compares
// with direct formula evaluation; additionally samples permutation trials.
// Deterministic for a fixed seed, independent of the thread count.
EquivalenceReport check_equivalence(const AhatModel& model, const SemiAlgFormula& formula,
                                    long long max_sum, long long permutation_trials = 0,
                                    std::uint64_t seed = 0, bool parallel = true);
EquivalenceReport check_equivalence(const AhatModel& model, const QfpaFormula& formula,
                                    long long max_sum, long long permutation_trials = 0,
                                    std::uint64_t seed = 0, bool parallel = true);
// Membership via projection against a predicate over the original letters.
EquivalenceReport check_equivalence(const CompiledLanguage& compiled,
                                    const std::function<bool(const ParikhVector&)>& predicate,
                                    long long max_sum, bool parallel = true);

// Generic core used by the overloads; decides each vector independently.
EquivalenceReport check_equivalence_core(
    const std::function<bool(const ParikhVector&)>& model_side,
    const std::function<bool(const ParikhVector&)>& formula_side, size_t arity, long long max_sum,
    bool include_zero, bool parallel);

struct EmptinessResult {
  std::optional<ParikhVector> witness;          // least accepted vector, graded lex
  std::optional<ParikhVector> nonzero_witness;  // least accepted nonzero vector
  long long bound = 0;
  // A bounded search proves nothing when empty-handed; reports say so.
  std::string note;
};

EmptinessResult bounded_emptiness(const AhatModel& model, long long max_sum);
EmptinessResult bounded_emptiness(const CompiledLanguage& compiled, long long max_sum);

struct PermutationReport {
  long long trials = 0;
  std::vector<PermutationFailure> failures;
  std::uint64_t seed = 0;
  bool invariant() const { return failures.empty(); }
};

// For every Parikh class with word length <= max_len, compares the canonical
// word's verdict against trials_per_word seeded random permutations. Any
// failure is an implementation bug for the models this workbench builds.
PermutationReport check_permutation_invariance(const AhatModel& model, long long max_len,
                                               long long trials_per_word, std::uint64_t seed = 0,
                                               bool parallel = true);

// Deterministic, platform-independent RNG for everything seeded.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

void shuffle_word(Word& w, SplitMix64& rng);

}  // namespace ahatc
