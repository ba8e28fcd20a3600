#pragma once

#include <vector>

#include "ahatc/ahat.hpp"

// Internal helpers for assembling affine stages. Row/column indices are
// 0-based into the current component layout; builders keep matrices explicit
// so compiled models are byte-reproducible.
namespace ahatc::netutil {

struct RowSpec {
  std::vector<std::pair<size_t, Rational>> terms;  // (column, coefficient)
  Rational offset = Rational(0);
};

inline AffineMap rows_to_affine(const std::vector<RowSpec>& rows, size_t in_dim) {
  RatMatrix m(rows.size(), in_dim);
  RatVec offset(rows.size(), Rational(0));
  for (size_t r = 0; r < rows.size(); r++) {
    for (const auto& [c, coef] : rows[r].terms) m.at(r, c) += coef;
    offset[r] = rows[r].offset;
  }
  return AffineMap(std::move(m), std::move(offset));
}

inline RowSpec pass(size_t col) { return RowSpec{{{col, Rational(1)}}, Rational(0)}; }

inline RowSpec constant(Rational c) { return RowSpec{{}, std::move(c)}; }

// Identity carry of [0, n) columns.
inline std::vector<RowSpec> pass_range(size_t n) {
  std::vector<RowSpec> rows;
  for (size_t i = 0; i < n; i++) rows.push_back(pass(i));
  return rows;
}

inline FfnStage stage(std::vector<RowSpec> rows, size_t in_dim, Activation act) {
  return FfnStage{rows_to_affine(rows, in_dim), act};
}

// Lifts each stage of `net` to act on the first block of a wider input,
// carrying `carry` extra trailing components through unchanged. The carried
// components must be nonnegative whenever a relu stage is crossed.
inline FeedForwardNet lift_net_with_carry(const FeedForwardNet& net, size_t carry) {
  FeedForwardNet out;
  for (const auto& s : net.stages) {
    size_t in = s.map.in_dim(), outd = s.map.out_dim();
    RatMatrix m(outd + carry, in + carry);
    RatVec offset(outd + carry, Rational(0));
    for (size_t r = 0; r < outd; r++) {
      for (size_t c = 0; c < in; c++) m.at(r, c) = s.map.matrix.at(r, c);
      offset[r] = s.map.offset[r];
    }
    for (size_t i = 0; i < carry; i++) m.at(outd + i, in + i) = 1;
    out.stages.push_back(FfnStage{AffineMap(std::move(m), std::move(offset)), s.act});
  }
  return out;
}

// Incremental net assembly. Components are appended stage by stage; by
// default every existing component is carried through unchanged, which is
// only legal across a relu stage when the carried values are nonnegative --
// the construction invariants guarantee that wherever this builder is used.
class NetBuilder {
 public:
  explicit NetBuilder(size_t input_dim) : width_(input_dim) {}

  size_t width() const { return width_; }

  // Appends components computed by `new_rows`; when keep_existing is false the
  // new components replace the whole layout.
  std::vector<size_t> append(const std::vector<RowSpec>& new_rows, Activation act,
                             bool keep_existing = true) {
    std::vector<RowSpec> rows;
    if (keep_existing) rows = pass_range(width_);
    std::vector<size_t> indices;
    for (const auto& r : new_rows) {
      indices.push_back(rows.size());
      rows.push_back(r);
    }
    net_.stages.push_back(stage(std::move(rows), width_, act));
    width_ = net_.stages.back().map.out_dim();
    return indices;
  }

  // Final identity stage selecting the given components.
  void finish(const std::vector<size_t>& outputs) {
    std::vector<RowSpec> rows;
    for (size_t i : outputs) rows.push_back(pass(i));
    net_.stages.push_back(stage(std::move(rows), width_, Activation::Identity));
    width_ = outputs.size();
  }

  FeedForwardNet take() { return std::move(net_); }

 private:
  size_t width_;
  FeedForwardNet net_;
};

// Composes an affine map with a linear input rearrangement given by rows of
// (column, coefficient) selectors: result(x) = f(R x).
inline AffineMap compose_selector(const AffineMap& f, const std::vector<RowSpec>& selector,
                                  size_t in_dim) {
  AffineMap r = rows_to_affine(selector, in_dim);
  RatMatrix m(f.out_dim(), in_dim);
  for (size_t i = 0; i < f.out_dim(); i++)
    for (size_t j = 0; j < in_dim; j++) {
      Rational acc(0);
      for (size_t k = 0; k < f.in_dim(); k++)
        if (f.matrix.at(i, k) != 0 && r.matrix.at(k, j) != 0)
          acc += f.matrix.at(i, k) * r.matrix.at(k, j);
      m.at(i, j) = acc;
    }
  RatVec offset = f.offset;
  for (size_t i = 0; i < f.out_dim(); i++)
    for (size_t k = 0; k < f.in_dim(); k++)
      if (f.matrix.at(i, k) != 0 && r.offset[k] != 0) offset[i] += f.matrix.at(i, k) * r.offset[k];
  return AffineMap(std::move(m), std::move(offset));
}

}  // namespace ahatc::netutil
