#include "ahatc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ahatc {

std::vector<std::string> count_variables(const std::vector<Letter>& alphabet) {
  std::vector<std::string> vars;
  for (const auto& a : alphabet) vars.push_back("x_" + a);
  return vars;
}

namespace {

struct Token {
  enum class Kind { Int, Ident, Op, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) {
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; k++) {
        if (text[i + k] == '\n') {
          line++;
          col = 1;
        } else {
          col++;
        }
      }
      i += n;
    };
    while (i < text.size()) {
      char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      if (c == '#') {  // comment to end of line
        while (i < text.size() && text[i] != '\n') advance(1);
        continue;
      }
      int tl = line, tc = col;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) j++;
        tokens.push_back({Token::Kind::Int, text.substr(i, j - i), tl, tc});
        advance(j - i);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
          j++;
        tokens.push_back({Token::Kind::Ident, text.substr(i, j - i), tl, tc});
        advance(j - i);
        continue;
      }
      if ((c == '<' || c == '>') && i + 1 < text.size() && text[i + 1] == '=') {
        tokens.push_back({Token::Kind::Op, text.substr(i, 2), tl, tc});
        advance(2);
        continue;
      }
      if (std::string("+-*^()&|!<>=/").find(c) != std::string::npos) {
        tokens.push_back({Token::Kind::Op, std::string(1, c), tl, tc});
        advance(1);
        continue;
      }
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    tokens.push_back({Token::Kind::End, "", line, col});
  }

  std::vector<Token> tokens;
};

// Affine expression with rational coefficients, for QFPA atoms.
struct Affine {
  std::vector<Rational> coeffs;
  Rational constant;

  explicit Affine(size_t n) : coeffs(n, Rational(0)), constant(0) {}
  bool is_constant() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& q) { return q == 0; });
  }
};

class Parser {
 public:
  Parser(const std::string& text, const std::vector<Letter>& alphabet)
      : lexer_(text), alphabet_(alphabet) {
    vars_ = count_variables(alphabet);
  }

  // --- polynomial entry point (integer coefficients) -----------------------
  Polynomial parse_polynomial_top() {
    Polynomial p = parse_poly_int();
    expect_end();
    return p;
  }

  SemiAlgFormula parse_semialg_top() {
    SemiAlgNode n = parse_formula_semialg();
    expect_end();
    return SemiAlgFormula{vars_, std::move(n)};
  }

  QfpaFormula parse_qfpa_top() {
    QfpaNode n = parse_formula_qfpa();
    expect_end();
    return QfpaFormula{vars_, std::move(n)};
  }

 private:
  Lexer lexer_;
  size_t pos_ = 0;
  std::vector<Letter> alphabet_;
  std::vector<std::string> vars_;

  const Token& peek() const { return lexer_.tokens[pos_]; }
  const Token& get() { return lexer_.tokens[pos_++]; }
  bool at_op(const std::string& s) const {
    return peek().kind == Token::Kind::Op && peek().text == s;
  }
  bool accept_op(const std::string& s) {
    if (at_op(s)) {
      pos_++;
      return true;
    }
    return false;
  }
  void expect_op(const std::string& s) {
    if (!accept_op(s))
      throw ParseError("expected '" + s + "', found '" + peek().text + "'", peek().line, peek().col);
  }
  void expect_end() {
    if (peek().kind != Token::Kind::End)
      throw ParseError("trailing input starting at '" + peek().text + "'", peek().line, peek().col);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }

  bool at_rel() const {
    return at_op("<") || at_op(">") || at_op("<=") || at_op(">=") || at_op("=");
  }
  Rel parse_rel() {
    const Token& t = get();
    if (t.text == ">") return Rel::Gt;
    if (t.text == "<") return Rel::Lt;
    if (t.text == ">=") return Rel::Ge;
    if (t.text == "<=") return Rel::Le;
    if (t.text == "=") return Rel::Eq;
    throw ParseError("expected a relation, found '" + t.text + "'", t.line, t.col);
  }

  size_t var_index(const Token& t) const {
    auto it = std::find(vars_.begin(), vars_.end(), t.text);
    if (it == vars_.end()) {
      std::string known;
      for (const auto& v : vars_) known += (known.empty() ? "" : ", ") + v;
      throw ParseError("unknown variable '" + t.text + "' (declared: " + known + ")", t.line, t.col);
    }
    return static_cast<size_t>(it - vars_.begin());
  }

  unsigned parse_exponent() {
    const Token& t = get();
    if (t.kind != Token::Kind::Int)
      throw ParseError("expected an exponent after '^'", t.line, t.col);
    return static_cast<unsigned>(std::stoul(t.text));
  }

  // --- integer polynomials --------------------------------------------------
  Polynomial parse_poly_int() {
    bool neg = false;
    if (accept_op("-"))
      neg = true;
    else
      accept_op("+");
    Polynomial p = parse_term_int();
    if (neg) p = -p;
    while (at_op("+") || at_op("-")) {
      bool minus = get().text == "-";
      Polynomial t = parse_term_int();
      p = minus ? p - t : p + t;
    }
    return p;
  }

  Polynomial parse_term_int() {
    Polynomial p = parse_factor_int();
    for (;;) {
      if (accept_op("*")) {
        p = p * parse_factor_int();
      } else if (peek().kind == Token::Kind::Int || peek().kind == Token::Kind::Ident ||
                 at_op("(")) {
        p = p * parse_factor_int();  // juxtaposition
      } else {
        return p;
      }
    }
  }

  Polynomial parse_factor_int() {
    if (peek().kind == Token::Kind::Int) {
      Integer c = integer_from_string(get().text);
      if (at_op("/"))
        fail("rational coefficients are only allowed in QFPA formulas");
      return Polynomial::constant(vars_, c);
    }
    if (peek().kind == Token::Kind::Ident) {
      size_t idx = var_index(get());
      unsigned e = accept_op("^") ? parse_exponent() : 1;
      return Polynomial::variable(vars_, idx).pow(e);
    }
    if (accept_op("(")) {
      Polynomial p = parse_poly_int();
      expect_op(")");
      unsigned e = accept_op("^") ? parse_exponent() : 1;
      return p.pow(e);
    }
    fail("expected a number, variable or '('");
  }

  // --- semi-algebraic formulas ----------------------------------------------
  SemiAlgNode parse_formula_semialg() {
    std::vector<SemiAlgNode> parts;
    parts.push_back(parse_conj_semialg());
    while (accept_op("|")) parts.push_back(parse_conj_semialg());
    return SemiAlgNode::disj(std::move(parts));
  }

  SemiAlgNode parse_conj_semialg() {
    std::vector<SemiAlgNode> parts;
    parts.push_back(parse_lit_semialg());
    while (accept_op("&")) parts.push_back(parse_lit_semialg());
    return SemiAlgNode::conj(std::move(parts));
  }

  SemiAlgNode parse_lit_semialg() {
    if (accept_op("!")) return SemiAlgNode::negate(parse_lit_semialg());
    if (at_op("(")) {
      // Either a parenthesized formula or a parenthesized polynomial that
      // begins an atom; try the formula reading first and back off.
      size_t save = pos_;
      try {
        expect_op("(");
        SemiAlgNode inner = parse_formula_semialg();
        expect_op(")");
        if (at_rel() || at_op("^") || at_op("*") || at_op("+") || at_op("-"))
          throw ParseError("atom continues", peek().line, peek().col);
        return inner;
      } catch (const ParseError&) {
        pos_ = save;
      }
    }
    return parse_atom_semialg();
  }

  SemiAlgNode parse_atom_semialg() {
    Polynomial lhs = parse_poly_int();
    Rel rel = parse_rel();
    Polynomial rhs = parse_poly_int();
    return SemiAlgNode::atom(lhs - rhs, rel);
  }

  // --- QFPA formulas ----------------------------------------------------------
  QfpaNode negate_qfpa(QfpaNode n) {
    switch (n.kind) {
      case QfpaNode::Kind::Lit:
        n.negated = !n.negated;
        return n;
      case QfpaNode::Kind::And:
      case QfpaNode::Kind::Or: {
        std::vector<QfpaNode> children;
        for (auto& c : n.children) children.push_back(negate_qfpa(std::move(c)));
        return n.kind == QfpaNode::Kind::And ? QfpaNode::disj(std::move(children))
                                             : QfpaNode::conj(std::move(children));
      }
    }
    throw Error("unreachable");
  }

  QfpaNode parse_formula_qfpa() {
    std::vector<QfpaNode> parts;
    parts.push_back(parse_conj_qfpa());
    while (accept_op("|")) parts.push_back(parse_conj_qfpa());
    return QfpaNode::disj(std::move(parts));
  }

  QfpaNode parse_conj_qfpa() {
    std::vector<QfpaNode> parts;
    parts.push_back(parse_lit_qfpa());
    while (accept_op("&")) parts.push_back(parse_lit_qfpa());
    return QfpaNode::conj(std::move(parts));
  }

  QfpaNode parse_lit_qfpa() {
    if (accept_op("!")) return negate_qfpa(parse_lit_qfpa());
    if (at_op("(")) {
      size_t save = pos_;
      try {
        expect_op("(");
        QfpaNode inner = parse_formula_qfpa();
        expect_op(")");
        if (at_rel() || at_op("^") || at_op("*") || at_op("+") || at_op("-"))
          throw ParseError("atom continues", peek().line, peek().col);
        return inner;
      } catch (const ParseError&) {
        pos_ = save;
      }
    }
    return parse_atom_qfpa();
  }

  QfpaNode parse_atom_qfpa() {
    Affine lhs = parse_affine();
    Rel rel = parse_rel();
    Affine rhs = parse_affine();
    // canonical form c.x <= b
    std::vector<Rational> c(vars_.size());
    for (size_t i = 0; i < vars_.size(); i++) c[i] = lhs.coeffs[i] - rhs.coeffs[i];
    Rational b = rhs.constant - lhs.constant;
    auto lit = [&](std::vector<Rational> cc, Rational bb, bool neg) {
      return QfpaNode::literal(LinearInequality{std::move(cc), std::move(bb)}, neg);
    };
    auto flipped = [&]() {
      std::vector<Rational> nc(c.size());
      for (size_t i = 0; i < c.size(); i++) nc[i] = -c[i];
      return nc;
    };
    switch (rel) {
      case Rel::Le: return lit(c, b, false);
      case Rel::Ge: return lit(flipped(), -b, false);
      case Rel::Gt: return lit(c, b, true);            // !(c.x <= b)
      case Rel::Lt: return lit(flipped(), -b, true);   // !(c.x >= b)
      case Rel::Eq: {
        std::vector<QfpaNode> both;
        both.push_back(lit(c, b, false));
        both.push_back(lit(flipped(), -b, false));
        return QfpaNode::conj(std::move(both));
      }
    }
    throw Error("unreachable");
  }

  Affine parse_affine() {
    bool neg = false;
    if (accept_op("-"))
      neg = true;
    else
      accept_op("+");
    Affine a = parse_affine_term();
    if (neg) negate_affine(a);
    while (at_op("+") || at_op("-")) {
      bool minus = get().text == "-";
      Affine t = parse_affine_term();
      if (minus) negate_affine(t);
      add_affine(a, t);
    }
    return a;
  }

  void negate_affine(Affine& a) {
    for (auto& q : a.coeffs) q = -q;
    a.constant = -a.constant;
  }
  void add_affine(Affine& a, const Affine& b) {
    for (size_t i = 0; i < a.coeffs.size(); i++) a.coeffs[i] += b.coeffs[i];
    a.constant += b.constant;
  }

  Affine parse_affine_term() {
    Affine a = parse_affine_factor();
    for (;;) {
      bool star = accept_op("*");
      if (!star && peek().kind != Token::Kind::Int && peek().kind != Token::Kind::Ident &&
          !at_op("("))
        return a;
      Affine b = parse_affine_factor();
      // QFPA atoms are linear: at least one side of a product must be constant.
      if (!a.is_constant() && !b.is_constant())
        fail("QFPA atoms must be linear (degree <= 1)");
      if (a.is_constant()) {
        Rational k = a.constant;
        a = b;
        for (auto& q : a.coeffs) q *= k;
        a.constant *= k;
      } else {
        Rational k = b.constant;
        for (auto& q : a.coeffs) q *= k;
        a.constant *= k;
      }
    }
  }

  Affine parse_affine_factor() {
    if (peek().kind == Token::Kind::Int) {
      Integer num = integer_from_string(get().text);
      Affine a(vars_.size());
      if (accept_op("/")) {
        const Token& t = get();
        if (t.kind != Token::Kind::Int)
          throw ParseError("expected a denominator after '/'", t.line, t.col);
        Integer den = integer_from_string(t.text);
        if (den == 0) throw ParseError("zero denominator", t.line, t.col);
        Rational q(num, den);
        q.canonicalize();
        a.constant = q;
      } else {
        a.constant = Rational(num);
      }
      return a;
    }
    if (peek().kind == Token::Kind::Ident) {
      size_t idx = var_index(get());
      if (at_op("^")) fail("QFPA atoms must be linear (no exponents)");
      Affine a(vars_.size());
      a.coeffs[idx] = 1;
      return a;
    }
    if (accept_op("(")) {
      Affine a = parse_affine();
      expect_op(")");
      if (at_op("^")) fail("QFPA atoms must be linear (no exponents)");
      return a;
    }
    fail("expected a number, variable or '('");
  }
};

}  // namespace

FormulaFile split_formula_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  FormulaFile f;
  bool have_header = false;
  std::ostringstream body;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    std::string stripped = line;
    size_t hash = stripped.find('#');
    if (hash != std::string::npos) stripped = stripped.substr(0, hash);
    auto nonspace = stripped.find_first_not_of(" \t\r");
    if (!have_header) {
      if (nonspace == std::string::npos) continue;
      std::string trimmed = stripped.substr(nonspace);
      if (trimmed.rfind("alphabet:", 0) != 0)
        throw ParseError("expected header line 'alphabet: a,b,...'", lineno, 1);
      std::string letters = trimmed.substr(9);
      std::string cur;
      for (char c : letters + ",") {
        if (c == ',') {
          auto b = cur.find_first_not_of(" \t");
          auto e = cur.find_last_not_of(" \t");
          if (b != std::string::npos) f.alphabet.push_back(cur.substr(b, e - b + 1));
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (f.alphabet.empty()) throw ParseError("empty alphabet", lineno, 1);
      have_header = true;
    } else {
      body << line << "\n";
    }
  }
  if (!have_header) throw ParseError("missing header line 'alphabet: a,b,...'", 1, 1);
  f.body = body.str();
  return f;
}

Polynomial parse_polynomial(const std::string& text, const std::vector<Letter>& alphabet) {
  return Parser(text, alphabet).parse_polynomial_top();
}

SemiAlgFormula parse_semialg(const std::string& text, const std::vector<Letter>& alphabet) {
  return Parser(text, alphabet).parse_semialg_top();
}

QfpaFormula parse_qfpa(const std::string& text, const std::vector<Letter>& alphabet) {
  return Parser(text, alphabet).parse_qfpa_top();
}

Polynomial parse_polynomial_file(const std::string& text, std::vector<Letter>* alphabet_out) {
  FormulaFile f = split_formula_file(text);
  if (alphabet_out) *alphabet_out = f.alphabet;
  return parse_polynomial(f.body, f.alphabet);
}

SemiAlgFormula parse_semialg_file(const std::string& text, std::vector<Letter>* alphabet_out) {
  FormulaFile f = split_formula_file(text);
  if (alphabet_out) *alphabet_out = f.alphabet;
  return parse_semialg(f.body, f.alphabet);
}

QfpaFormula parse_qfpa_file(const std::string& text, std::vector<Letter>* alphabet_out) {
  FormulaFile f = split_formula_file(text);
  if (alphabet_out) *alphabet_out = f.alphabet;
  return parse_qfpa(f.body, f.alphabet);
}

std::string format_formula_file(const std::vector<Letter>& alphabet, const std::string& body,
                                const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
  }
  out << "alphabet: ";
  for (size_t i = 0; i < alphabet.size(); i++) out << (i ? "," : "") << alphabet[i];
  out << "\n" << body << "\n";
  return out.str();
}

}  // namespace ahatc
