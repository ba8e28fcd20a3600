#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ahatc/ahat.hpp"

namespace ahatc {

// LTL over finite words with prefix/suffix counting terms:
//   phi ::= a | t <= t | !phi | phi | phi | X phi | phi U phi
//   t   ::= k | k * <-# phi | k * -># phi | t + t
// <-# counts strictly before the current position, -># from it to the end.
struct LtlFormula;
using LtlPtr = std::shared_ptr<const LtlFormula>;

struct LtlTerm {
  enum class Kind { Const, CountPast, CountFuture, Sum };
  Kind kind = Kind::Const;
  long long value = 0;           // Const
  long long coeff = 1;           // counting coefficient k
  LtlPtr counted;                // counted subformula
  std::vector<LtlTerm> parts;    // Sum
};

struct LtlFormula {
  enum class Kind { Letter, Leq, Not, Or, Next, Until };
  Kind kind = Kind::Letter;
  Letter letter;
  LtlTerm lhs, rhs;  // Leq
  LtlPtr a, b;       // children: Not/Next use a; Or/Until use a, b
};

// Satisfaction at 1-based position i (1 <= i <= |word|). X needs a successor
// position; U is the standard until.
bool eval_ltl_count(const LtlPtr& f, const Word& word, size_t position);

// Membership: satisfaction at the first position; the word must be nonempty.
bool ltl_count_membership(const LtlPtr& f, const Word& word);

// DSL: the formula grammar extended with the X, U, <-#, -># tokens; '&' is
// accepted as sugar for !(!a | !b). Files carry the usual alphabet header.
LtlPtr parse_ltl_count(const std::string& text, const std::vector<Letter>& alphabet);
LtlPtr parse_ltl_count_file(const std::string& text, std::vector<Letter>* alphabet_out = nullptr);

}  // namespace ahatc
