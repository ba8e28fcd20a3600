#include "ahatc/linalg.hpp"

namespace ahatc {

RatMatrix RatMatrix::identity(size_t n) {
  RatMatrix m(n, n);
  for (size_t i = 0; i < n; i++) m.at(i, i) = 1;
  return m;
}

bool RatMatrix::is_zero() const {
  for (const auto& q : data)
    if (q != 0) return false;
  return true;
}

RatVec mat_vec(const RatMatrix& m, const RatVec& v) {
  if (v.size() != m.cols)
    throw Error("matrix/vector dimension mismatch: " + std::to_string(m.cols) + " cols vs " +
                std::to_string(v.size()) + " entries");
  RatVec out(m.rows, Rational(0));
  for (size_t r = 0; r < m.rows; r++) {
    Rational acc(0);
    for (size_t c = 0; c < m.cols; c++) {
      const Rational& coef = m.at(r, c);
      if (coef != 0) acc += coef * v[c];
    }
    out[r] = acc;
  }
  return out;
}

Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size())
    throw Error("dot product dimension mismatch: " + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()));
  Rational acc(0);
  for (size_t i = 0; i < a.size(); i++)
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  return acc;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size())
    throw Error("vector addition dimension mismatch: " + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()));
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); i++) out[i] = a[i] + b[i];
  return out;
}

RatVec vec_scale(const Rational& c, const RatVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); i++) out[i] = c * v[i];
  return out;
}

RatVec concat(const RatVec& a, const RatVec& b) {
  RatVec out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

RatVec AffineMap::apply(const RatVec& x) const {
  RatVec out = mat_vec(matrix, x);
  for (size_t i = 0; i < out.size(); i++) out[i] += offset[i];
  return out;
}

}  // namespace ahatc
