#include "ahatc/rational.hpp"

namespace ahatc {

std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

static bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); i++)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Integer integer_from_string(std::string_view text) {
  if (!valid_integer_text(text)) throw Error("invalid integer literal: '" + std::string(text) + "'");
  return Integer(std::string(text), 10);
}

Rational rational_from_string(std::string_view text, bool require_canonical) {
  size_t slash = text.find('/');
  Integer num, den;
  if (slash == std::string_view::npos) {
    num = integer_from_string(text);
    den = 1;
  } else {
    num = integer_from_string(text.substr(0, slash));
    den = integer_from_string(text.substr(slash + 1));
  }
  if (den == 0) throw Error("zero denominator in rational: '" + std::string(text) + "'");
  Rational q(num, den);
  if (require_canonical) {
    Rational canon = q;
    canon.canonicalize();
    if (canon.get_num() != num || canon.get_den() != den)
      throw Error("non-canonical rational: '" + std::string(text) + "' (expected " +
                  rational_to_string(canon) + ")");
    return canon;
  }
  q.canonicalize();
  return q;
}

}  // namespace ahatc
