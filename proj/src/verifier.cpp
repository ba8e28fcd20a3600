#include "ahatc/verifier.hpp"

#include <algorithm>

#include <json.hpp>

namespace ahatc {

using nlohmann::json;

namespace {

void emit_grade(size_t m, long long remaining, size_t index, ParikhVector& cur,
                std::vector<ParikhVector>& out) {
  if (index + 1 == m) {
    cur[index] = remaining;
    out.push_back(cur);
    return;
  }
  for (long long c = remaining; c >= 0; c--) {  // first component descending
    cur[index] = c;
    emit_grade(m, remaining - c, index + 1, cur, out);
  }
}

}  // namespace

std::vector<ParikhVector> enumerate_parikh(size_t m, long long max_sum) {
  if (max_sum < 1) throw Error("enumerate_parikh: max_sum must be at least 1");
  std::vector<ParikhVector> out;
  ParikhVector cur(m, 0);
  for (long long g = 1; g <= max_sum; g++) emit_grade(m, g, 0, cur, out);
  return out;
}

std::vector<ParikhVector> enumerate_parikh_with_zero(size_t m, long long max_sum) {
  std::vector<ParikhVector> out;
  out.push_back(ParikhVector(m, 0));
  if (max_sum >= 1) {
    auto rest = enumerate_parikh(m, max_sum);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

EquivalenceReport check_equivalence_core(
    const std::function<bool(const ParikhVector&)>& model_side,
    const std::function<bool(const ParikhVector&)>& formula_side, size_t arity, long long max_sum,
    bool include_zero, bool parallel) {
  std::vector<ParikhVector> vectors =
      include_zero ? enumerate_parikh_with_zero(arity, max_sum) : enumerate_parikh(arity, max_sum);
  std::vector<unsigned char> model_verdicts(vectors.size()), formula_verdicts(vectors.size());
  std::vector<std::string> errors(vectors.size());

  // Per-index slots keep the merge deterministic regardless of scheduling.
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(vectors.size()); i++) {
    try {
      model_verdicts[i] = model_side(vectors[i]) ? 1 : 0;
      formula_verdicts[i] = formula_side(vectors[i]) ? 1 : 0;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (size_t i = 0; i < vectors.size(); i++)
    if (!errors[i].empty()) throw Error("check_equivalence: " + errors[i]);

  EquivalenceReport report;
  report.bound = max_sum;
  report.vectors_checked = static_cast<long long>(vectors.size());
  for (size_t i = 0; i < vectors.size(); i++)
    if (model_verdicts[i] != formula_verdicts[i])
      report.mismatches.push_back(Mismatch{vectors[i], model_verdicts[i] == 1, formula_verdicts[i] == 1});
  return report;
}

namespace {

// Seeded permutation trials against the canonical-word verdicts.
void run_permutation_trials(const AhatModel& model, long long trials, std::uint64_t seed,
                            long long max_sum, EquivalenceReport& report) {
  if (trials <= 0) return;
  std::vector<ParikhVector> vectors = enumerate_parikh(model.alphabet.size(), max_sum);
  SplitMix64 rng(seed ^ 0x5eedULL);
  for (long long t = 0; t < trials; t++) {
    const ParikhVector& v = vectors[rng.below(vectors.size())];
    Word canonical = canonical_word(v, model.alphabet);
    Word permuted = canonical;
    shuffle_word(permuted, rng);
    bool cv = run_ahat(model, canonical).accept;
    bool pv = run_ahat(model, permuted).accept;
    if (cv != pv)
      report.permutation_failures.push_back(PermutationFailure{canonical, permuted, cv, pv});
  }
  report.permutation_trials = trials;
}

}  // namespace

EquivalenceReport check_equivalence(const AhatModel& model, const SemiAlgFormula& formula,
                                    long long max_sum, long long permutation_trials,
                                    std::uint64_t seed, bool parallel) {
  if (model.alphabet.size() != formula.vars.size())
    throw Error("check_equivalence: model and formula alphabets differ in size");
  auto model_side = [&](const ParikhVector& v) {
    return run_ahat(model, canonical_word(v, model.alphabet)).accept;
  };
  auto formula_side = [&](const ParikhVector& v) { return eval_semialg(formula, v); };
  EquivalenceReport report = check_equivalence_core(model_side, formula_side,
                                                    model.alphabet.size(), max_sum, false, parallel);
  report.seed = seed;
  run_permutation_trials(model, permutation_trials, seed, max_sum, report);
  return report;
}

EquivalenceReport check_equivalence(const AhatModel& model, const QfpaFormula& formula,
                                    long long max_sum, long long permutation_trials,
                                    std::uint64_t seed, bool parallel) {
  if (model.alphabet.size() != formula.vars.size())
    throw Error("check_equivalence: model and formula alphabets differ in size");
  auto model_side = [&](const ParikhVector& v) {
    return run_ahat(model, canonical_word(v, model.alphabet)).accept;
  };
  auto formula_side = [&](const ParikhVector& v) { return eval_qfpa(formula, v); };
  EquivalenceReport report = check_equivalence_core(model_side, formula_side,
                                                    model.alphabet.size(), max_sum, false, parallel);
  report.seed = seed;
  run_permutation_trials(model, permutation_trials, seed, max_sum, report);
  return report;
}

EquivalenceReport check_equivalence(const CompiledLanguage& compiled,
                                    const std::function<bool(const ParikhVector&)>& predicate,
                                    long long max_sum, bool parallel) {
  auto model_side = [&](const ParikhVector& v) { return membership_via_projection(compiled, v); };
  return check_equivalence_core(model_side, predicate, compiled.original_letters.size(), max_sum,
                                true, parallel);
}

std::string EquivalenceReport::to_json(const std::vector<Letter>& alphabet) const {
  json j;
  j["bound"] = bound;
  j["vectors_checked"] = vectors_checked;
  j["seed"] = seed;
  j["alphabet"] = alphabet;
  json ms = json::array();
  for (const auto& m : mismatches)
    ms.push_back(json{{"vector", m.vector},
                      {"model", m.model_verdict},
                      {"formula", m.formula_verdict}});
  j["mismatches"] = ms;
  j["permutation_trials"] = permutation_trials;
  json pf = json::array();
  for (const auto& f : permutation_failures)
    pf.push_back(json{{"canonical", f.canonical},
                      {"permuted", f.permuted},
                      {"canonical_verdict", f.canonical_verdict},
                      {"permuted_verdict", f.permuted_verdict}});
  j["permutation_failures"] = pf;
  j["equivalent"] = equivalent();
  return j.dump(2) + "\n";
}

namespace {

EmptinessResult bounded_emptiness_core(const std::function<bool(const ParikhVector&)>& member,
                                       size_t arity, long long max_sum, bool include_zero) {
  EmptinessResult r;
  r.bound = max_sum;
  std::vector<ParikhVector> vectors =
      include_zero ? enumerate_parikh_with_zero(arity, max_sum) : enumerate_parikh(arity, max_sum);
  for (const auto& v : vectors) {
    if (!member(v)) continue;
    if (!r.witness) r.witness = v;
    bool nonzero = std::any_of(v.begin(), v.end(), [](long long c) { return c > 0; });
    if (nonzero && !r.nonzero_witness) {
      r.nonzero_witness = v;
      break;
    }
    if (!include_zero) break;
  }
  r.note = r.witness ? "witness found and re-verified"
                     : "none (bounded search up to sum " + std::to_string(max_sum) +
                           "; NOT a proof of emptiness)";
  return r;
}

}  // namespace

EmptinessResult bounded_emptiness(const AhatModel& model, long long max_sum) {
  auto member = [&](const ParikhVector& v) {
    return run_ahat(model, canonical_word(v, model.alphabet)).accept;
  };
  EmptinessResult r = bounded_emptiness_core(member, model.alphabet.size(), max_sum, false);
  if (r.witness) {
    // Re-verify with both evaluation paths before reporting.
    Word w = canonical_word(*r.witness, model.alphabet);
    if (!run_ahat(model, w).accept || !run_ahat_reference(model, w))
      throw Error("bounded_emptiness: witness failed re-verification");
  }
  return r;
}

EmptinessResult bounded_emptiness(const CompiledLanguage& compiled, long long max_sum) {
  auto member = [&](const ParikhVector& v) { return membership_via_projection(compiled, v); };
  EmptinessResult r =
      bounded_emptiness_core(member, compiled.original_letters.size(), max_sum, true);
  if (r.witness && !membership_via_projection(compiled, *r.witness))
    throw Error("bounded_emptiness: witness failed re-verification");
  return r;
}

void shuffle_word(Word& w, SplitMix64& rng) {
  for (size_t i = w.size(); i > 1; i--) std::swap(w[i - 1], w[rng.below(i)]);
}

namespace {

// Number of Parikh classes up to max_len, capped (large alphabets overflow).
long long class_count_capped(size_t m, long long max_len, long long cap) {
  Integer total = 0;
  for (long long g = 1; g <= max_len; g++) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(g + m - 1),
                 static_cast<unsigned long>(m - 1));
    total += c;
    if (total > Integer(static_cast<long>(cap))) return cap + 1;
  }
  return static_cast<long long>(total.get_si());
}

}  // namespace

PermutationReport check_permutation_invariance(const AhatModel& model, long long max_len,
                                               long long trials_per_word, std::uint64_t seed,
                                               bool parallel) {
  PermutationReport report;
  report.seed = seed;
  // Exhaust the Parikh classes when feasible; otherwise sample seeded random
  // words (large alphabets, e.g. the two-layer quadratic models).
  const long long kClassCap = 20000;
  std::vector<ParikhVector> vectors;
  if (class_count_capped(model.alphabet.size(), max_len, kClassCap) <= kClassCap) {
    vectors = enumerate_parikh(model.alphabet.size(), max_len);
  } else {
    SplitMix64 sampler(seed ^ 0xabcdefULL);
    for (int i = 0; i < 500; i++) {
      size_t len = 1 + sampler.below(static_cast<std::uint64_t>(max_len));
      ParikhVector v(model.alphabet.size(), 0);
      for (size_t k = 0; k < len; k++) v[sampler.below(model.alphabet.size())]++;
      vectors.push_back(std::move(v));
    }
  }
  std::vector<std::vector<PermutationFailure>> failures(vectors.size());
  std::vector<std::string> errors(vectors.size());

#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(vectors.size()); i++) {
    try {
      Word canonical = canonical_word(vectors[i], model.alphabet);
      bool cv = run_ahat(model, canonical).accept;
      SplitMix64 rng(seed + 0x9e37ull * static_cast<std::uint64_t>(i));
      for (long long t = 0; t < trials_per_word; t++) {
        Word permuted = canonical;
        shuffle_word(permuted, rng);
        bool pv = run_ahat(model, permuted).accept;
        if (pv != cv)
          failures[i].push_back(PermutationFailure{canonical, permuted, cv, pv});
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (size_t i = 0; i < vectors.size(); i++) {
    if (!errors[i].empty()) throw Error("check_permutation_invariance: " + errors[i]);
    for (auto& f : failures[i]) report.failures.push_back(std::move(f));
  }
  report.trials = static_cast<long long>(vectors.size()) * trials_per_word;
  return report;
}

}  // namespace ahatc
