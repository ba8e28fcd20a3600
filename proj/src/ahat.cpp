#include "ahatc/ahat.hpp"

#include <algorithm>
#include <sstream>

namespace ahatc {

void FeedForwardNet::validate(const std::string& context) const {
  if (stages.empty()) throw Error(context + ": feed-forward net has no stages");
  for (size_t i = 0; i + 1 < stages.size(); i++) {
    if (stages[i].map.out_dim() != stages[i + 1].map.in_dim())
      throw Error(context + ": net stage " + std::to_string(i) + " outputs " +
                  std::to_string(stages[i].map.out_dim()) + " but stage " + std::to_string(i + 1) +
                  " expects " + std::to_string(stages[i + 1].map.in_dim()));
  }
  for (size_t i = 0; i < stages.size(); i++) {
    if (stages[i].map.offset.size() != stages[i].map.out_dim())
      throw Error(context + ": net stage " + std::to_string(i) + " offset size mismatch");
  }
}

RatVec eval_ffn(const FeedForwardNet& net, const RatVec& input, std::vector<int>* relu_signs) {
  if (net.stages.empty()) throw Error("eval_ffn: empty net");
  if (input.size() != net.in_dim())
    throw Error("eval_ffn: input has dimension " + std::to_string(input.size()) +
                " but net stage 0 expects " + std::to_string(net.in_dim()));
  RatVec cur = input;
  for (size_t i = 0; i < net.stages.size(); i++) {
    const FfnStage& stage = net.stages[i];
    if (cur.size() != stage.map.in_dim())
      throw Error("eval_ffn: dimension mismatch at net stage " + std::to_string(i));
    cur = stage.map.apply(cur);
    if (stage.act == Activation::Relu) {
      for (auto& v : cur) {
        int s = sgn(v);
        if (relu_signs) relu_signs->push_back(s);
        if (s < 0) v = 0;
      }
    }
  }
  return cur;
}

void AhaLayer::validate(size_t layer_index) const {
  const std::string ctx = "layer " + std::to_string(layer_index);
  if (query.in_dim() != key.in_dim() || query.in_dim() != value.in_dim())
    throw Error(ctx + ": query/key/value input dimensions disagree");
  if (query.out_dim() != key.out_dim())
    throw Error(ctx + ": query and key must share their output dimension");
  if (query.offset.size() != query.out_dim() || key.offset.size() != key.out_dim() ||
      value.offset.size() != value.out_dim())
    throw Error(ctx + ": affine offset size mismatch");
  net.validate(ctx);
  if (net.in_dim() != input_dim() + value_dim())
    throw Error(ctx + ": net expects " + std::to_string(net.in_dim()) + " inputs, but d+k is " +
                std::to_string(input_dim() + value_dim()));
}

bool is_uniform(const AhaLayer& layer) {
  return layer.key.matrix.is_zero() && layer.query.matrix.is_zero();
}

size_t AhatModel::embedding_dim() const {
  if (embedding.empty()) return 0;
  return embedding.begin()->second.size();
}

bool AhatModel::has_letter(const Letter& a) const {
  return std::find(alphabet.begin(), alphabet.end(), a) != alphabet.end();
}

int AhatModel::letter_index(const Letter& a) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), a);
  return it == alphabet.end() ? -1 : static_cast<int>(it - alphabet.begin());
}

void AhatModel::validate() const {
  if (alphabet.empty()) throw Error("model: empty alphabet");
  {
    std::set<Letter> seen;
    for (const auto& a : alphabet)
      if (!seen.insert(a).second) throw Error("model: duplicate alphabet letter '" + a + "'");
  }
  size_t d = embedding_dim();
  if (d == 0) throw Error("model: no embeddings");
  for (const auto& a : alphabet) {
    auto it = embedding.find(a);
    if (it == embedding.end()) throw Error("model: letter '" + a + "' has no embedding");
    if (it->second.size() != d) throw Error("model: embedding dimension mismatch for '" + a + "'");
  }
  if (uses_end_marker) {
    if (has_letter(end_marker))
      throw Error("model: end marker '" + end_marker + "' must not be an alphabet letter");
    auto it = embedding.find(end_marker);
    if (it == embedding.end()) throw Error("model: end marker has no embedding");
    if (it->second.size() != d) throw Error("model: end marker embedding dimension mismatch");
  }
  if (constant_pe && constant_pe->size() != d)
    throw Error("model: constant positional encoding dimension mismatch");
  size_t cur = d;
  for (size_t i = 0; i < layers.size(); i++) {
    layers[i].validate(i);
    if (layers[i].input_dim() != cur)
      throw Error("model: layer " + std::to_string(i) + " expects input dimension " +
                  std::to_string(layers[i].input_dim()) + " but receives " + std::to_string(cur));
    cur = layers[i].output_dim();
  }
  if (cur < 1) throw Error("model: final output dimension must be at least 1");
  for (const auto& a : projection_deleted)
    if (!has_letter(a)) throw Error("model: projection_deleted letter '" + a + "' not in alphabet");
}

long long EvalTrace::argmax_count(size_t layer, size_t pos) const {
  const auto& arg = layers.at(layer).argmax.at(class_of.at(pos));
  long long total = 0;
  for (int c : arg) total += counts[c];
  return total;
}

const RatVec& EvalTrace::output_at(size_t layer, size_t pos) const {
  return layers.at(layer).outputs.at(class_of.at(pos));
}

const RatVec& EvalTrace::final_output() const {
  if (layers.empty()) throw Error("trace: model has no layers");
  return layers.back().outputs.at(class_of.back());
}

namespace {

// Shared setup: resolve the sequence (word plus end marker) into letter
// classes ordered by the model's alphabet, with counts.
struct ClassSetup {
  std::vector<Letter> seq;
  std::vector<Letter> classes;
  std::vector<long long> counts;
  std::vector<int> class_of;
  std::vector<RatVec> class_embedding;
};

ClassSetup resolve_classes(const AhatModel& model, const Word& word) {
  if (word.empty()) throw Error("run_ahat: empty word (languages are subsets of the nonempty words)");
  ClassSetup s;
  s.seq = word;
  for (const auto& a : word) {
    if (!model.has_letter(a)) throw Error("run_ahat: letter '" + a + "' outside the model alphabet");
    if (model.uses_end_marker && a == model.end_marker)
      throw Error("run_ahat: the end marker is appended internally and may not appear in the word");
  }
  if (model.uses_end_marker) s.seq.push_back(model.end_marker);

  std::map<Letter, long long> count_map;
  for (const auto& a : s.seq) count_map[a]++;
  for (const auto& a : model.alphabet)
    if (count_map.count(a)) s.classes.push_back(a);
  if (model.uses_end_marker) s.classes.push_back(model.end_marker);

  std::map<Letter, int> class_index;
  for (size_t i = 0; i < s.classes.size(); i++) {
    class_index[s.classes[i]] = static_cast<int>(i);
    s.counts.push_back(count_map[s.classes[i]]);
  }
  for (const auto& a : s.seq) s.class_of.push_back(class_index[a]);

  for (const auto& c : s.classes) {
    RatVec x = model.embedding.at(c);
    if (model.constant_pe) x = vec_add(x, *model.constant_pe);
    s.class_embedding.push_back(std::move(x));
  }
  return s;
}

}  // namespace

EvalResult run_ahat(const AhatModel& model, const Word& word) {
  model.validate();
  ClassSetup setup = resolve_classes(model, word);
  size_t nc = setup.classes.size();

  EvalResult result;
  EvalTrace& trace = result.trace;
  trace.seq = setup.seq;
  trace.classes = setup.classes;
  trace.counts = setup.counts;
  trace.class_of = setup.class_of;

  std::vector<RatVec> cur = setup.class_embedding;
  for (const AhaLayer& layer : model.layers) {
    EvalTrace::LayerTrace lt;
    std::vector<RatVec> keys(nc), queries(nc), values(nc);
    for (size_t c = 0; c < nc; c++) {
      keys[c] = layer.key.apply(cur[c]);
      queries[c] = layer.query.apply(cur[c]);
      values[c] = layer.value.apply(cur[c]);
    }
    lt.scores.resize(nc);
    lt.argmax.resize(nc);
    lt.outputs.resize(nc);
    lt.relu_signs.resize(nc);
    for (size_t c = 0; c < nc; c++) {
      // Score of attending class c against class d: <key(x_c), query(x_d)>.
      RatVec scores(nc);
      for (size_t d = 0; d < nc; d++) scores[d] = dot(keys[c], queries[d]);
      const Rational* best = &scores[0];
      for (size_t d = 1; d < nc; d++)
        if (scores[d] > *best) best = &scores[d];
      std::vector<int> argmax;
      long long total = 0;
      for (size_t d = 0; d < nc; d++)
        if (scores[d] == *best) {
          argmax.push_back(static_cast<int>(d));
          total += setup.counts[d];
        }
      RatVec sum(layer.value_dim(), Rational(0));
      for (int d : argmax) {
        RatVec contrib = vec_scale(Rational(static_cast<long>(setup.counts[d])), values[d]);
        sum = vec_add(sum, contrib);
      }
      RatVec attention = vec_scale(Rational(1, static_cast<long>(total)), sum);
      lt.outputs[c] = eval_ffn(layer.net, concat(cur[c], attention), &lt.relu_signs[c]);
      lt.scores[c] = std::move(scores);
      lt.argmax[c] = std::move(argmax);
    }
    cur = lt.outputs;
    trace.layers.push_back(std::move(lt));
  }

  if (model.layers.empty()) throw Error("run_ahat: model has no layers");
  result.accept = trace.final_output()[0] > 0;
  return result;
}

std::vector<std::vector<long long>> tie_report(const AhatModel& model, const Word& word) {
  EvalResult r = run_ahat(model, word);
  std::vector<std::vector<long long>> report;
  for (size_t l = 0; l < r.trace.layers.size(); l++) {
    std::vector<long long> row;
    for (size_t p = 0; p < r.trace.length(); p++) row.push_back(r.trace.argmax_count(l, p));
    report.push_back(std::move(row));
  }
  return report;
}

AhaLayerResult eval_aha_layer(const AhaLayer& layer, const std::vector<RatVec>& seq) {
  if (seq.empty()) throw Error("eval_aha_layer: empty sequence");
  size_t n = seq.size();
  std::vector<RatVec> keys(n), queries(n), values(n);
  for (size_t i = 0; i < n; i++) {
    if (seq[i].size() != layer.input_dim())
      throw Error("eval_aha_layer: position " + std::to_string(i) + " has dimension " +
                  std::to_string(seq[i].size()) + ", layer expects " +
                  std::to_string(layer.input_dim()));
    keys[i] = layer.key.apply(seq[i]);
    queries[i] = layer.query.apply(seq[i]);
    values[i] = layer.value.apply(seq[i]);
  }
  AhaLayerResult result;
  result.outputs.resize(n);
  result.argmax.resize(n);
  for (size_t i = 0; i < n; i++) {
    std::vector<Rational> scores(n);
    for (size_t j = 0; j < n; j++) scores[j] = dot(keys[i], queries[j]);
    Rational best = scores[0];
    for (size_t j = 1; j < n; j++)
      if (scores[j] > best) best = scores[j];
    RatVec sum(layer.value_dim(), Rational(0));
    for (size_t j = 0; j < n; j++)
      if (scores[j] == best) {
        result.argmax[i].push_back(j);
        sum = vec_add(sum, values[j]);
      }
    RatVec attention = vec_scale(Rational(1, static_cast<long>(result.argmax[i].size())), sum);
    result.outputs[i] = eval_ffn(layer.net, concat(seq[i], attention));
  }
  return result;
}

bool run_ahat_reference(const AhatModel& model, const Word& word) {
  model.validate();
  ClassSetup setup = resolve_classes(model, word);
  std::vector<RatVec> cur;
  for (int c : setup.class_of) cur.push_back(setup.class_embedding[c]);
  if (model.layers.empty()) throw Error("run_ahat_reference: model has no layers");
  for (const AhaLayer& layer : model.layers) cur = eval_aha_layer(layer, cur).outputs;
  return cur.back()[0] > 0;
}

Word word_from_string(const std::string& text, const std::vector<Letter>& alphabet) {
  bool single_char = true;
  for (const auto& a : alphabet)
    if (a.size() != 1) single_char = false;
  Word w;
  if (single_char && text.find_first_of(" ,\t") == std::string::npos) {
    for (char ch : text) w.push_back(std::string(1, ch));
  } else {
    std::string tok;
    std::istringstream in(text);
    while (in >> tok) {
      // also split on commas
      std::stringstream ss(tok);
      std::string part;
      while (std::getline(ss, part, ','))
        if (!part.empty()) w.push_back(part);
    }
  }
  return w;
}

}  // namespace ahatc
