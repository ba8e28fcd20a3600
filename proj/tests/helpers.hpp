#pragma once

#include <vector>

#include "ahatc/ahat.hpp"

namespace ahatc::testing {

inline RatMatrix matrix(std::vector<std::vector<Rational>> rows) {
  RatMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t r = 0; r < rows.size(); r++)
    for (size_t c = 0; c < rows[r].size(); c++) m.at(r, c) = rows[r][c];
  return m;
}

inline AffineMap affine(std::vector<std::vector<Rational>> rows, RatVec offset) {
  return AffineMap(matrix(std::move(rows)), std::move(offset));
}

inline FfnStage stage(std::vector<std::vector<Rational>> rows, RatVec offset, Activation act) {
  return FfnStage{affine(std::move(rows), std::move(offset)), act};
}

// min(x, y) = y - max(0, y - x), robust for negative inputs via a pos/neg
// split of y through the relu stage.
inline FeedForwardNet min_net() {
  FeedForwardNet net;
  net.stages.push_back(stage({{rat(-1), rat(1)}, {rat(0), rat(1)}, {rat(0), rat(-1)}},
                             {rat(0), rat(0), rat(0)}, Activation::Relu));
  net.stages.push_back(stage({{rat(-1), rat(1), rat(-1)}}, {rat(0)}, Activation::Identity));
  return net;
}

// |z| = ReLU(z) + ReLU(-z)
inline FeedForwardNet abs_net() {
  FeedForwardNet net;
  net.stages.push_back(stage({{rat(1)}, {rat(-1)}}, {rat(0), rat(0)}, Activation::Relu));
  net.stages.push_back(stage({{rat(1), rat(1)}}, {rat(0)}, Activation::Identity));
  return net;
}

// Net that forwards the attention block unchanged: (x, a) -> a.
inline FeedForwardNet select_attention_net(size_t d, size_t k) {
  std::vector<std::vector<Rational>> rows(k, std::vector<Rational>(d + k, rat(0)));
  for (size_t i = 0; i < k; i++) rows[i][d + i] = rat(1);
  FeedForwardNet net;
  net.stages.push_back(stage(std::move(rows), RatVec(k, rat(0)), Activation::Identity));
  return net;
}

// Hand-built majority model with end marker: one uniform layer, value = input,
// output = freq(a) - freq(b). Accepts words with more a's than b's.
inline AhatModel hand_maj_model() {
  AhatModel m;
  m.alphabet = {"a", "b"};
  m.embedding["a"] = {rat(1), rat(0), rat(0)};
  m.embedding["b"] = {rat(0), rat(1), rat(0)};
  m.embedding["$"] = {rat(0), rat(0), rat(1)};
  m.uses_end_marker = true;
  m.end_marker = "$";
  AhaLayer layer;
  layer.query = AffineMap::zero(1, 3);
  layer.key = AffineMap::zero(1, 3);
  layer.value = AffineMap::identity(3);
  FeedForwardNet net;
  net.stages.push_back(stage({{rat(0), rat(0), rat(0), rat(1), rat(-1), rat(0)}}, {rat(0)},
                             Activation::Identity));
  layer.net = net;
  m.layers.push_back(layer);
  m.sign_normalized_output = true;
  return m;
}

}  // namespace ahatc::testing
