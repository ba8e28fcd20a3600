#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ahatc/ahat.hpp"
#include "ahatc/formula.hpp"

namespace ahatc {

inline constexpr const char* kToolVersion = "ahatc 0.1.0";
inline const Letter kEndMarker = "$";

// A compiled language with auxiliary letters: the model runs over variable
// letters plus one marker letter per inequality; membership of a vector over
// the original letters goes through the projection that deletes markers and
// computes the chain-determined fresh-variable counts.
struct CompiledLanguage {
  AhatModel model;
  std::vector<Letter> original_letters;   // the user-facing alphabet
  std::vector<Letter> variable_letters;   // original + fresh, in system order
  std::vector<Letter> marker_letters;     // one per inequality, must occur exactly once
  std::vector<FreshDef> fresh;            // chain definitions; empty if not chain-determined
};

// ---- Uniform-attention polynomial compiler --------------------------------
// NoPE AHAT with end marker, every attention layer uniform, accepting
// { w : p(Parikh(w)) > 0 }. Homogenizes p (end-marker count = 1), computes
// frequencies with one uniform layer, evaluates each monomial with a chain of
// multiplication gadgets, and reads out sum(coeff * monomial)/(n+1)^deg.
AhatModel compile_poly_gt0(const Polynomial& p, const std::vector<Letter>& alphabet);

// The omult gadget: given the current width, an initial (one-hot) component i
// and a uniform component j with value in [0,1], appends a new uniform
// component carrying x_i * y_j / (n+1). Two layers: a ReLU product step
// (u_i * y_j = ReLU(y_j - (1 - u_i))) and a uniform averaging step. Existing
// components pass through unchanged.
std::vector<AhaLayer> build_omult_gadget(size_t width, size_t initial_component,
                                         size_t uniform_component);

// ---- Boolean closure -------------------------------------------------------
// Concatenated embeddings; A's layers act on the first block while the second
// is carried through, then B's layers symmetrically. Readout is the sum
// (union) or min (intersection) of the ReLU-normalized first coordinates,
// which is sound because a sign-normalized operand outputs exactly 0 when
// rejecting after the ReLU. Requires both operands to carry the contract flag.
AhatModel model_union(const AhatModel& a, const AhatModel& b);
AhatModel model_intersection(const AhatModel& a, const AhatModel& b);

// Atoms via compile_poly_gt0, Boolean structure via union/intersection.
// Requires a normalized (negation-free, strict-atom) formula.
AhatModel compile_semialg(const SemiAlgFormula& f, const std::vector<Letter>& alphabet);

// ---- One-layer QFPA compiler (end marker) ----------------------------------
// Single uniform attention layer; embedding of $ carries the atom bounds and
// the margin constant o_phi; the net evaluates the formula on letter
// frequencies, outputting exactly o_phi/n on satisfaction and 0 otherwise.
AhatModel compile_qfpa_one_layer(const QfpaFormula& f, const std::vector<Letter>& alphabet);

// The margin: a positive rational below every possible violation gap of every
// atom over natural-number points.
Rational qfpa_margin(const QfpaFormula& f);

// ---- Two-layer quadratic-system compiler -----------------------------------
// The system is a conjunction of strict inequalities q_i < 0 over the given
// variables, each q_i simple quadratic. Layer 1 (uniform) computes
// frequencies and collects per-marker factor vectors; layer 2 evaluates each
// q_i/(n+1)^2 as an attention score; the readout checks that no violating
// score won the argmax and that every marker occurs exactly once.
CompiledLanguage compile_quadratic_system_two_layers(const std::vector<Polynomial>& system,
                                                     const std::vector<Letter>& variable_letters);

// reduce_to_simple_quadratics + compile_quadratic_system_two_layers for the
// equation p = 0; records the chain definitions for witness computation.
CompiledLanguage compile_diophantine_equation(const Polynomial& p,
                                              const std::vector<Letter>& original_letters);

// Membership of a vector over the original letters: extend by the
// chain-determined fresh counts and one occurrence of each marker, then run
// the model. Falls back to bounded search when fresh variables are not
// chain-determined (witness_bound per fresh variable).
bool membership_via_projection(const CompiledLanguage& c, const ParikhVector& v,
                               std::optional<long long> witness_bound = std::nullopt);

// ---- No-end-marker constructions -------------------------------------------
// Fixed two-layer model over {a,b} accepting 2|w|_a^2 < |w|^2.
AhatModel compile_sqrt_two_layer_nem();

// One uniform layer, no end marker, for and/or combinations of strict
// homogeneous inequalities c.x < 0 (every atom bound zero, every literal
// negated in the canonical <=-form).
AhatModel compile_homogeneous_qfpa_nem(const QfpaFormula& f, const std::vector<Letter>& alphabet);

// ---- Compiled-language file round trip --------------------------------------
std::string save_compiled_language(const CompiledLanguage& c);
CompiledLanguage load_compiled_language(const std::string& json_text);
bool file_has_compiled_section(const std::string& json_text);

}  // namespace ahatc
