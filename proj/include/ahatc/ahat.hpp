#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ahatc/linalg.hpp"

namespace ahatc {

using Letter = std::string;
using Word = std::vector<Letter>;  // nonempty wherever a language membership is asked

enum class Activation { Relu, Identity };

struct FfnStage {
  AffineMap map;
  Activation act = Activation::Relu;

  bool operator==(const FfnStage&) const = default;
};

// Chain of affine stages, each optionally followed by componentwise max(0, .).
// Identity stages house the free affine post-processing (sums, subtractions,
// coefficient scaling) that the constructions interleave with ReLU nodes.
struct FeedForwardNet {
  std::vector<FfnStage> stages;

  size_t in_dim() const { return stages.empty() ? 0 : stages.front().map.in_dim(); }
  size_t out_dim() const { return stages.empty() ? 0 : stages.back().map.out_dim(); }
  void validate(const std::string& context) const;

  bool operator==(const FeedForwardNet&) const = default;
};

// Evaluates the net exactly. If relu_signs is non-null, the sign (-1/0/+1) of
// every pre-activation component of every relu stage is appended to it, in
// stage order; the extractor's branch-soundness checks compare against these.
RatVec eval_ffn(const FeedForwardNet& net, const RatVec& input, std::vector<int>* relu_signs = nullptr);

struct AhaLayer {
  AffineMap query;  // d -> m
  AffineMap key;    // d -> m
  AffineMap value;  // d -> k
  FeedForwardNet net;  // d + k -> e

  size_t input_dim() const { return query.in_dim(); }
  size_t score_dim() const { return query.out_dim(); }
  size_t value_dim() const { return value.out_dim(); }
  size_t output_dim() const { return net.out_dim(); }
  void validate(size_t layer_index) const;

  bool operator==(const AhaLayer&) const = default;
};

// A layer is uniform iff its key and query maps are constant, i.e. their
// linear parts are zero. Every position then attends to all positions.
bool is_uniform(const AhaLayer& layer);

struct ModelSource {
  std::string formula;
  std::string mode;
  std::string version;

  bool operator==(const ModelSource&) const = default;
};

struct AhatModel {
  std::vector<Letter> alphabet;  // user-facing letters; end marker not included
  std::map<Letter, RatVec> embedding;  // covers alphabet, plus end_marker when used
  std::optional<RatVec> constant_pe;   // NoPE: added identically at every position
  std::vector<AhaLayer> layers;
  bool uses_end_marker = false;
  Letter end_marker;  // present iff uses_end_marker
  std::set<Letter> projection_deleted;  // letters deleted before membership (markers)
  // Output contract: first output coordinate is > 0 on acceptance and <= 0 on
  // rejection with a positive margin that is a rational function of the input
  // length. Union/intersection require it of both operands.
  bool sign_normalized_output = false;
  std::optional<ModelSource> source;

  size_t embedding_dim() const;
  size_t output_dim() const { return layers.empty() ? embedding_dim() : layers.back().output_dim(); }
  bool has_letter(const Letter& a) const;
  int letter_index(const Letter& a) const;  // -1 if absent
  void validate() const;
};

// Per-run trace. Vectors are stored per letter class: in a NoPE model two
// positions holding the same letter carry identical vectors at every layer,
// so the class table is the whole state. Per-position views are derived.
struct EvalTrace {
  std::vector<Letter> seq;           // the evaluated sequence, incl. end marker
  std::vector<Letter> classes;       // distinct letters of seq, in first-occurrence-of-alphabet order
  std::vector<long long> counts;     // per class
  std::vector<int> class_of;         // per position

  struct LayerTrace {
    std::vector<RatVec> outputs;               // per class
    std::vector<std::vector<int>> argmax;      // per attending class: maximizing class indices
    std::vector<RatVec> scores;                // per attending class: score against each class
    std::vector<std::vector<int>> relu_signs;  // per class: relu pre-activation signs
  };
  std::vector<LayerTrace> layers;

  size_t length() const { return seq.size(); }
  // |P| for the given layer and position (1-based positions in reports, 0-based here).
  long long argmax_count(size_t layer, size_t pos) const;
  const RatVec& output_at(size_t layer, size_t pos) const;
  const RatVec& final_output() const;  // vector at the last position after the last layer
};

struct EvalResult {
  bool accept = false;
  EvalTrace trace;
};

// Runs the model on `word` (the end marker, if any, is appended internally).
// Acceptance: first coordinate of the last position's final vector is > 0.
// Exact arithmetic throughout; pure function of (model, word).
EvalResult run_ahat(const AhatModel& model, const Word& word);

// |P| for every layer and position. A layer is tieless on this word iff all
// its entries are 1.
std::vector<std::vector<long long>> tie_report(const AhatModel& model, const Word& word);

// Literal per-position evaluation of one AHA layer, exactly as defined:
// position i attends with scores <key(x_i), query(x_j)> over positions j,
// P_i is the argmax set, a_i the average of value(x_j) over P_i, and the
// output is net(x_i, a_i). Serial reference path; the class-collapsed
// evaluator above must agree with it on every word.
struct AhaLayerResult {
  std::vector<RatVec> outputs;
  std::vector<std::vector<size_t>> argmax;  // per position: maximizing positions (0-based)
};
AhaLayerResult eval_aha_layer(const AhaLayer& layer, const std::vector<RatVec>& seq);

bool run_ahat_reference(const AhatModel& model, const Word& word);

// Splits a plain string into a Word: one letter per character when all
// alphabet letters are single characters, otherwise whitespace/comma tokens.
Word word_from_string(const std::string& text, const std::vector<Letter>& alphabet);

}  // namespace ahatc
