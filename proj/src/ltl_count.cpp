#include "ahatc/ltl_count.hpp"

#include <algorithm>
#include <cctype>

#include "ahatc/parser.hpp"

namespace ahatc {

namespace {

long long eval_term(const LtlTerm& t, const Word& w, size_t i);

bool eval_at(const LtlFormula& f, const Word& w, size_t i) {
  const size_t len = w.size();
  switch (f.kind) {
    case LtlFormula::Kind::Letter:
      return w[i - 1] == f.letter;
    case LtlFormula::Kind::Leq:
      return eval_term(f.lhs, w, i) <= eval_term(f.rhs, w, i);
    case LtlFormula::Kind::Not:
      return !eval_at(*f.a, w, i);
    case LtlFormula::Kind::Or:
      return eval_at(*f.a, w, i) || eval_at(*f.b, w, i);
    case LtlFormula::Kind::Next:
      return i < len && eval_at(*f.a, w, i + 1);
    case LtlFormula::Kind::Until:
      // exists j >= i with b at j and a on all of [i, j).
      for (size_t j = i; j <= len; j++) {
        if (eval_at(*f.b, w, j)) return true;
        if (!eval_at(*f.a, w, j)) return false;
      }
      return false;
  }
  return false;
}

long long eval_term(const LtlTerm& t, const Word& w, size_t i) {
  switch (t.kind) {
    case LtlTerm::Kind::Const:
      return t.value;
    case LtlTerm::Kind::CountPast: {
      long long n = 0;
      for (size_t j = 1; j < i; j++)
        if (eval_at(*t.counted, w, j)) n++;
      return t.coeff * n;
    }
    case LtlTerm::Kind::CountFuture: {
      long long n = 0;
      for (size_t j = i; j <= w.size(); j++)
        if (eval_at(*t.counted, w, j)) n++;
      return t.coeff * n;
    }
    case LtlTerm::Kind::Sum: {
      long long s = 0;
      for (const auto& p : t.parts) s += eval_term(p, w, i);
      return s;
    }
  }
  return 0;
}

}  // namespace

bool eval_ltl_count(const LtlPtr& f, const Word& word, size_t position) {
  if (!f) throw Error("eval_ltl_count: null formula");
  if (position < 1 || position > word.size())
    throw Error("eval_ltl_count: position " + std::to_string(position) + " out of range 1.." +
                std::to_string(word.size()));
  return eval_at(*f, word, position);
}

bool ltl_count_membership(const LtlPtr& f, const Word& word) {
  if (word.empty()) throw Error("ltl_count_membership: empty word");
  return eval_ltl_count(f, word, 1);
}

namespace {

// Hand-rolled lexer: the shared formula tokens plus X, U, <-#, -># keywords.
struct LtlToken {
  enum class Kind { Int, Ident, Op, End };
  Kind kind;
  std::string text;
  int line, col;
};

std::vector<LtlToken> lex(const std::string& text) {
  std::vector<LtlToken> tokens;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](LtlToken::Kind k, std::string s) {
    tokens.push_back({k, std::move(s), line, col});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      line++;
      col = 1;
      i++;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      col++;
      i++;
      continue;
    }
    if (c == '#') {  // the counting operators consume their '#' as one token
      while (i < text.size() && text[i] != '\n') i++;
      continue;
    }
    if (text.compare(i, 3, "<-#") == 0) {
      push(LtlToken::Kind::Op, "<-#");
      i += 3;
      col += 3;
      continue;
    }
    if (text.compare(i, 3, "->#") == 0) {
      push(LtlToken::Kind::Op, "->#");
      i += 3;
      col += 3;
      continue;
    }
    if (c == '<' && i + 1 < text.size() && text[i + 1] == '=') {
      push(LtlToken::Kind::Op, "<=");
      i += 2;
      col += 2;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) j++;
      push(LtlToken::Kind::Int, text.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        j++;
      push(LtlToken::Kind::Ident, text.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::string("()!|&+*-").find(c) != std::string::npos) {
      push(LtlToken::Kind::Op, std::string(1, c));
      i++;
      col++;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  tokens.push_back({LtlToken::Kind::End, "", line, col});
  return tokens;
}

class LtlParser {
 public:
  LtlParser(const std::string& text, const std::vector<Letter>& alphabet)
      : tokens_(lex(text)), alphabet_(alphabet) {}

  LtlPtr parse() {
    LtlPtr f = parse_or();
    if (peek().kind != LtlToken::Kind::End)
      throw ParseError("trailing input starting at '" + peek().text + "'", peek().line,
                       peek().col);
    return f;
  }

 private:
  std::vector<LtlToken> tokens_;
  size_t pos_ = 0;
  std::vector<Letter> alphabet_;

  const LtlToken& peek() const { return tokens_[pos_]; }
  const LtlToken& get() { return tokens_[pos_++]; }
  bool at_op(const std::string& s) const {
    return peek().kind == LtlToken::Kind::Op && peek().text == s;
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
      throw ParseError("expected '" + s + "', found '" + peek().text + "'", peek().line,
                       peek().col);
  }

  static LtlPtr mk(LtlFormula f) { return std::make_shared<const LtlFormula>(std::move(f)); }

  static LtlPtr mk_not(LtlPtr a) {
    LtlFormula f;
    f.kind = LtlFormula::Kind::Not;
    f.a = std::move(a);
    return mk(std::move(f));
  }

  LtlPtr parse_or() {
    LtlPtr a = parse_and();
    while (accept_op("|")) {
      LtlFormula f;
      f.kind = LtlFormula::Kind::Or;
      f.a = a;
      f.b = parse_and();
      a = mk(std::move(f));
    }
    return a;
  }

  // '&' is sugar: a & b == !(!a | !b).
  LtlPtr parse_and() {
    LtlPtr a = parse_until();
    while (accept_op("&")) {
      LtlPtr b = parse_until();
      LtlFormula inner;
      inner.kind = LtlFormula::Kind::Or;
      inner.a = mk_not(a);
      inner.b = mk_not(b);
      a = mk_not(mk(std::move(inner)));
    }
    return a;
  }

  LtlPtr parse_until() {  // right-associative
    LtlPtr a = parse_unary();
    if (peek().kind == LtlToken::Kind::Ident && peek().text == "U") {
      get();
      LtlFormula f;
      f.kind = LtlFormula::Kind::Until;
      f.a = std::move(a);
      f.b = parse_until();
      return mk(std::move(f));
    }
    return a;
  }

  LtlPtr parse_unary() {
    if (accept_op("!")) return mk_not(parse_unary());
    if (peek().kind == LtlToken::Kind::Ident && peek().text == "X") {
      get();
      LtlFormula f;
      f.kind = LtlFormula::Kind::Next;
      f.a = parse_unary();
      return mk(std::move(f));
    }
    return parse_atom();
  }

  bool term_ahead() const {
    // A term starts with an integer, a sign, or a counting operator.
    return peek().kind == LtlToken::Kind::Int || at_op("<-#") || at_op("->#") || at_op("-") ||
           at_op("+");
  }

  LtlPtr parse_atom() {
    if (at_op("(")) {
      get();
      LtlPtr f = parse_or();
      expect_op(")");
      return f;
    }
    if (term_ahead()) return parse_leq();
    const LtlToken& t = get();
    if (t.kind != LtlToken::Kind::Ident)
      throw ParseError("expected a letter, term or '('", t.line, t.col);
    if (t.text == "X" || t.text == "U")
      throw ParseError("'" + t.text + "' is a reserved operator", t.line, t.col);
    if (std::find(alphabet_.begin(), alphabet_.end(), t.text) == alphabet_.end())
      throw ParseError("letter '" + t.text + "' not in the declared alphabet", t.line, t.col);
    LtlFormula f;
    f.kind = LtlFormula::Kind::Letter;
    f.letter = t.text;
    return mk(std::move(f));
  }

  LtlPtr parse_leq() {
    LtlTerm lhs = parse_term();
    expect_op("<=");
    LtlTerm rhs = parse_term();
    LtlFormula f;
    f.kind = LtlFormula::Kind::Leq;
    f.lhs = std::move(lhs);
    f.rhs = std::move(rhs);
    return mk(std::move(f));
  }

  LtlTerm parse_term() {
    LtlTerm first = parse_addend();
    std::vector<LtlTerm> parts;
    parts.push_back(std::move(first));
    while (at_op("+") || at_op("-")) {
      bool minus = get().text == "-";
      LtlTerm next = parse_addend();
      if (minus) {
        if (next.kind == LtlTerm::Kind::Const)
          next.value = -next.value;
        else
          next.coeff = -next.coeff;
      }
      parts.push_back(std::move(next));
    }
    if (parts.size() == 1) return parts[0];
    LtlTerm sum;
    sum.kind = LtlTerm::Kind::Sum;
    sum.parts = std::move(parts);
    return sum;
  }

  LtlTerm parse_addend() {
    long long k = 1;
    bool have_int = false;
    bool negative = false;
    if (accept_op("-")) negative = true;
    if (peek().kind == LtlToken::Kind::Int) {
      k = std::stoll(get().text);
      have_int = true;
    }
    if (negative) k = -k;
    if (have_int && !at_op("*") && !at_op("<-#") && !at_op("->#")) {
      LtlTerm t;
      t.kind = LtlTerm::Kind::Const;
      t.value = k;
      return t;
    }
    accept_op("*");
    bool past;
    if (accept_op("<-#"))
      past = true;
    else if (accept_op("->#"))
      past = false;
    else
      throw ParseError("expected '<-#' or '->#' after the coefficient", peek().line, peek().col);
    LtlTerm t;
    t.kind = past ? LtlTerm::Kind::CountPast : LtlTerm::Kind::CountFuture;
    t.coeff = k;
    t.counted = parse_unary();
    return t;
  }
};

}  // namespace

LtlPtr parse_ltl_count(const std::string& text, const std::vector<Letter>& alphabet) {
  return LtlParser(text, alphabet).parse();
}

LtlPtr parse_ltl_count_file(const std::string& text, std::vector<Letter>* alphabet_out) {
  FormulaFile f = split_formula_file(text);
  if (alphabet_out) *alphabet_out = f.alphabet;
  return parse_ltl_count(f.body, f.alphabet);
}

}  // namespace ahatc
