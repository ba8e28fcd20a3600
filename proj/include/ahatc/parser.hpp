#pragma once

#include <string>
#include <vector>

#include "ahatc/formula.hpp"

namespace ahatc {

// Formula files start with a header line `alphabet: a,b,...`; `#` starts a
// comment. The body is one formula (or one polynomial) in the DSL:
//   formula := disj ; disj := conj ('|' conj)* ; conj := lit ('&' lit)*
//   lit := '!'? ( '(' formula ')' | atom ) ; atom := poly rel poly
//   rel := '>' | '<' | '>=' | '<=' | '='
//   poly := signed sum of terms; term := factors joined by optional '*',
//   factor := number | x_<letter> ('^' nat)? | '(' poly ')' ('^' nat)?
// Semi-algebraic polynomials take integer coefficients; QFPA atoms are linear
// with rational coefficients written num/den.
struct FormulaFile {
  std::vector<Letter> alphabet;
  std::string body;
};

FormulaFile split_formula_file(const std::string& text);

Polynomial parse_polynomial(const std::string& text, const std::vector<Letter>& alphabet);
SemiAlgFormula parse_semialg(const std::string& text, const std::vector<Letter>& alphabet);
QfpaFormula parse_qfpa(const std::string& text, const std::vector<Letter>& alphabet);

Polynomial parse_polynomial_file(const std::string& text, std::vector<Letter>* alphabet_out = nullptr);
SemiAlgFormula parse_semialg_file(const std::string& text, std::vector<Letter>* alphabet_out = nullptr);
QfpaFormula parse_qfpa_file(const std::string& text, std::vector<Letter>* alphabet_out = nullptr);

std::string format_formula_file(const std::vector<Letter>& alphabet, const std::string& body,
                                const std::string& comment = "");

std::vector<std::string> count_variables(const std::vector<Letter>& alphabet);

}  // namespace ahatc
