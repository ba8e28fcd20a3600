#include "ahatc/model_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ahatc {

using nlohmann::json;

namespace {

json vec_to_json(const RatVec& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(rational_to_string(q));
  return a;
}

RatVec vec_from_json(const json& a, const std::string& what) {
  if (!a.is_array()) throw Error("model file: " + what + " must be an array of rationals");
  RatVec v;
  for (const auto& e : a) {
    if (!e.is_string()) throw Error("model file: " + what + " entries must be \"num/den\" strings");
    v.push_back(rational_from_string(e.get<std::string>(), true));
  }
  return v;
}

json matrix_to_json(const RatMatrix& m) {
  json rows = json::array();
  for (size_t r = 0; r < m.rows; r++) {
    json row = json::array();
    for (size_t c = 0; c < m.cols; c++) row.push_back(rational_to_string(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

RatMatrix matrix_from_json(const json& a, const std::string& what) {
  if (!a.is_array() || a.empty()) throw Error("model file: " + what + " must be a nonempty matrix");
  size_t rows = a.size();
  size_t cols = a[0].is_array() ? a[0].size() : 0;
  RatMatrix m(rows, cols);
  for (size_t r = 0; r < rows; r++) {
    if (!a[r].is_array() || a[r].size() != cols)
      throw Error("model file: ragged matrix in " + what);
    for (size_t c = 0; c < cols; c++) {
      if (!a[r][c].is_string())
        throw Error("model file: matrix entries must be \"num/den\" strings in " + what);
      m.at(r, c) = rational_from_string(a[r][c].get<std::string>(), true);
    }
  }
  return m;
}

json affine_to_json(const AffineMap& f) {
  return json{{"matrix", matrix_to_json(f.matrix)}, {"offset", vec_to_json(f.offset)}};
}

AffineMap affine_from_json(const json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("matrix") || !j.contains("offset"))
    throw Error("model file: " + what + " must be {matrix, offset}");
  return AffineMap(matrix_from_json(j.at("matrix"), what), vec_from_json(j.at("offset"), what));
}

void check_fields(const json& j, const std::vector<std::string>& allowed, const std::string& what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw Error("model file: unknown field '" + it.key() + "' in " + what);
  }
}

}  // namespace

std::string save_model(const AhatModel& model) {
  json j;
  json alpha = json::array();
  for (const auto& a : model.alphabet) alpha.push_back(a);
  j["alphabet"] = alpha;
  json emb = json::object();
  for (const auto& [letter, vec] : model.embedding) emb[letter] = vec_to_json(vec);
  j["embedding"] = emb;
  j["constant_pe"] = model.constant_pe ? vec_to_json(*model.constant_pe) : json(nullptr);
  json layers = json::array();
  for (const auto& layer : model.layers) {
    json net = json::array();
    for (const auto& stage : layer.net.stages) {
      json s = affine_to_json(stage.map);
      s["activation"] = stage.act == Activation::Relu ? "relu" : "identity";
      net.push_back(s);
    }
    layers.push_back(json{{"query", affine_to_json(layer.query)},
                          {"key", affine_to_json(layer.key)},
                          {"value", affine_to_json(layer.value)},
                          {"net", net}});
  }
  j["layers"] = layers;
  j["uses_end_marker"] = model.uses_end_marker;
  if (model.uses_end_marker) j["end_marker"] = model.end_marker;
  json proj = json::array();
  for (const auto& a : model.projection_deleted) proj.push_back(a);
  j["projection_deleted"] = proj;
  j["sign_normalized_output"] = model.sign_normalized_output;
  if (model.source)
    j["source"] = json{{"formula", model.source->formula},
                       {"mode", model.source->mode},
                       {"version", model.source->version}};
  return j.dump(2) + "\n";
}

static AhatModel load_model_json(const json& j) {
  if (!j.is_object()) throw Error("model file: top level must be a JSON object");
  check_fields(j,
               {"alphabet", "embedding", "constant_pe", "layers", "uses_end_marker", "end_marker",
                "projection_deleted", "sign_normalized_output", "source", "compiled"},
               "model");
  AhatModel m;
  for (const auto& a : j.at("alphabet")) m.alphabet.push_back(a.get<std::string>());
  for (auto it = j.at("embedding").begin(); it != j.at("embedding").end(); ++it)
    m.embedding[it.key()] = vec_from_json(it.value(), "embedding of '" + it.key() + "'");
  const json& pe = j.at("constant_pe");
  if (!pe.is_null()) {
    // The encoding must be one constant vector; any per-position structure is
    // a non-constant positional encoding and is rejected here.
    if (!pe.is_array() || (pe.size() > 0 && !pe[0].is_string()))
      throw Error("model file: constant_pe must be null or a single rational vector (NoPE)");
    m.constant_pe = vec_from_json(pe, "constant_pe");
  }
  for (const auto& jl : j.at("layers")) {
    check_fields(jl, {"query", "key", "value", "net"}, "layer");
    AhaLayer layer;
    layer.query = affine_from_json(jl.at("query"), "query");
    layer.key = affine_from_json(jl.at("key"), "key");
    layer.value = affine_from_json(jl.at("value"), "value");
    for (const auto& js : jl.at("net")) {
      check_fields(js, {"matrix", "offset", "activation"}, "net stage");
      FfnStage stage;
      stage.map = affine_from_json(js, "net stage");
      std::string act = js.at("activation").get<std::string>();
      if (act == "relu")
        stage.act = Activation::Relu;
      else if (act == "identity")
        stage.act = Activation::Identity;
      else
        throw Error("model file: unknown activation '" + act + "'");
      layer.net.stages.push_back(std::move(stage));
    }
    m.layers.push_back(std::move(layer));
  }
  m.uses_end_marker = j.at("uses_end_marker").get<bool>();
  if (m.uses_end_marker) m.end_marker = j.at("end_marker").get<std::string>();
  for (const auto& a : j.at("projection_deleted")) m.projection_deleted.insert(a.get<std::string>());
  if (j.contains("sign_normalized_output"))
    m.sign_normalized_output = j.at("sign_normalized_output").get<bool>();
  if (j.contains("source")) {
    ModelSource s;
    s.formula = j.at("source").value("formula", "");
    s.mode = j.at("source").value("mode", "");
    s.version = j.at("source").value("version", "");
    m.source = s;
  }
  m.validate();
  return m;
}

AhatModel load_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("model file: invalid JSON: ") + e.what());
  }
  return load_model_json(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << contents;
}

std::string model_hash(const AhatModel& model) {
  std::string text = save_model(model);
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return std::string(buf);
}

}  // namespace ahatc
