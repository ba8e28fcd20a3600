#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ahatc/ahat.hpp"
#include "ahatc/formula.hpp"

namespace ahatc {

// A polynomial fraction over the letter-count variables. The denominator is
// kept as a multiset of factors, each certified strictly positive under the
// current branch's occurrence pattern (attention sums over occurring letters,
// and constants), so inequalities clear without flipping.
struct SymbolicRational {
  Polynomial num;
  std::vector<Polynomial> den_factors;  // sorted; empty means denominator 1

  Polynomial denominator() const;
};

struct GuardAtom {
  enum class Kind { Gt0, Ge0, Eq0 };
  Polynomial poly;
  Kind kind;

  bool holds(const std::vector<Integer>& point) const;
};

// One enumerated evaluation branch: the occurrence pattern, the chosen argmax
// class sets and relu sign pattern, the clearing of its guards, and the
// acceptance payload. Sign codes: +1/-1 guarded strict/nonpositive choices,
// +2/-2 sign decided statically (arg provably >= 0 resp. <= 0).
struct ExtractionBranch {
  std::vector<bool> support;                           // sigma, per alphabet letter
  std::vector<Letter> classes;                         // sigma letters + end marker
  std::vector<std::vector<std::vector<int>>> argmax;   // [layer][class] -> class indices
  std::vector<std::vector<std::vector<int>>> relu;     // [layer][class] -> sign codes
  std::vector<GuardAtom> guards;                       // includes occurrence constraints
  GuardAtom payload;                                   // acceptance: out[0] > 0
  bool accepting_at_desk_scale = false;

  bool guards_hold(const ParikhVector& v) const;
};

struct ExtractionResult {
  SemiAlgFormula formula;
  std::vector<ExtractionBranch> branches;  // every guard-feasible branch
  long long branches_explored = 0;
  long long branches_pruned = 0;
};

// Enumerates occurrence patterns, argmax-set choices and ReLU branches over
// class-collapsed symbolic traces and returns the disjunction of the guarded
// acceptance conditions, normalized to strict polynomial atoms. Branches whose
// guards have no solution with component sum <= prune_bound are pruned, so
// equivalence is certified at desk scale (prune_bound must be at least the
// verification bound). Layers with statically decided scores (uniform layers,
// first-layer scores) contribute no subset choices.
ExtractionResult extract_semialg(const AhatModel& model, long long branch_budget = 1 << 20,
                                 long long prune_bound = 20);

// One-attention-layer, end-marker models only: the same enumeration produces
// purely linear guards, returned as a QFPA formula.
struct QfpaExtractionResult {
  QfpaFormula formula;
  long long branches_explored = 0;
  long long branches_pruned = 0;
};
QfpaExtractionResult extract_qfpa_one_layer(const AhatModel& model,
                                            long long branch_budget = 1 << 20,
                                            long long prune_bound = 20);

// p/q rel 0 with q certified positive becomes p rel 0; equalities between
// fractions cross-multiply. Throws unless every denominator factor is
// certified positive for the given support.
Polynomial clear_denominators(const SymbolicRational& v, const std::vector<bool>& support,
                              const std::vector<std::string>& vars);
Polynomial cross_difference(const SymbolicRational& a, const SymbolicRational& b);

// Positivity certificate: nonnegative coefficients plus a positive monomial
// supported on occurring letters (or a positive constant).
bool is_certified_positive(const Polynomial& p, const std::vector<bool>& support);

}  // namespace ahatc
