#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ahatc/rational.hpp"

namespace ahatc {

using RatVec = std::vector<Rational>;

// Dense row-major rational matrix. Small dimensions throughout (model widths),
// so no sparsity games.
struct RatMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<Rational> data;  // rows * cols, row-major

  RatMatrix() = default;
  RatMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c) {}

  Rational& at(size_t r, size_t c) { return data[r * cols + c]; }
  const Rational& at(size_t r, size_t c) const { return data[r * cols + c]; }

  static RatMatrix identity(size_t n);
  static RatMatrix zero(size_t r, size_t c) { return RatMatrix(r, c); }

  bool is_zero() const;
  bool operator==(const RatMatrix& other) const = default;
};

RatVec mat_vec(const RatMatrix& m, const RatVec& v);
Rational dot(const RatVec& a, const RatVec& b);
RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rational& c, const RatVec& v);
RatVec concat(const RatVec& a, const RatVec& b);

// Affine map x -> matrix*x + offset.
struct AffineMap {
  RatMatrix matrix;
  RatVec offset;

  AffineMap() = default;
  AffineMap(RatMatrix m, RatVec o) : matrix(std::move(m)), offset(std::move(o)) {}

  size_t in_dim() const { return matrix.cols; }
  size_t out_dim() const { return matrix.rows; }

  RatVec apply(const RatVec& x) const;

  bool operator==(const AffineMap& other) const = default;

  static AffineMap identity(size_t n) { return AffineMap(RatMatrix::identity(n), RatVec(n)); }
  static AffineMap zero(size_t out, size_t in) { return AffineMap(RatMatrix::zero(out, in), RatVec(out)); }
};

}  // namespace ahatc
