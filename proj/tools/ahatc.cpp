// ahatc: compile counting-language formulas into exact-arithmetic AHAT
// models, run and trace them, extract formulas back out, certify
// model/formula equivalence by brute force, and run the baseline
// interpreters (simplified multicounter machines, LTL with counting).
//
// Exit codes: run/baseline: 0 accept, 1 reject, 2 error.
//             verify: 0 equivalent, 1 mismatches found, 2 error.
//             empty: 0 witness found, 1 none within the bound, 2 error.
//             everything else: 0 success, 2 error.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "ahatc/compiler.hpp"
#include "ahatc/extractor.hpp"
#include "ahatc/ltl_count.hpp"
#include "ahatc/model_io.hpp"
#include "ahatc/parser.hpp"
#include "ahatc/smcm.hpp"
#include "ahatc/verifier.hpp"

using namespace ahatc;

namespace {

void apply_thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("AHATC_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

std::string trace_json(const EvalResult& result) {
  nlohmann::json j;
  j["accept"] = result.accept;
  const EvalTrace& t = result.trace;
  j["sequence"] = t.seq;
  nlohmann::json layers = nlohmann::json::array();
  for (size_t l = 0; l < t.layers.size(); l++) {
    nlohmann::json jl;
    nlohmann::json vectors = nlohmann::json::array();
    nlohmann::json argmax = nlohmann::json::array();
    for (size_t p = 0; p < t.length(); p++) {
      nlohmann::json vec = nlohmann::json::array();
      for (const auto& q : t.output_at(l, p)) vec.push_back(rational_to_string(q));
      vectors.push_back(vec);
      // 1-based positions of the argmax set of this position.
      nlohmann::json pos = nlohmann::json::array();
      for (size_t other = 0; other < t.length(); other++) {
        const auto& classes = t.layers[l].argmax[t.class_of[p]];
        if (std::find(classes.begin(), classes.end(), t.class_of[other]) != classes.end())
          pos.push_back(other + 1);
      }
      argmax.push_back(pos);
    }
    jl["vectors"] = vectors;
    jl["argmax_positions"] = argmax;
    layers.push_back(jl);
  }
  j["layers"] = layers;
  nlohmann::json fin = nlohmann::json::array();
  for (const auto& q : t.final_output()) fin.push_back(rational_to_string(q));
  j["final"] = fin;
  return j.dump(2) + "\n";
}

struct FormulaSides {
  std::optional<SemiAlgFormula> semialg;
  std::optional<QfpaFormula> qfpa;
  std::vector<Letter> alphabet;
};

// QFPA is tried first (it accepts rational coefficients); anything nonlinear
// falls back to the semi-algebraic reading.
FormulaSides parse_formula_auto(const std::string& text) {
  FormulaSides out;
  try {
    out.qfpa = parse_qfpa_file(text, &out.alphabet);
    return out;
  } catch (const Error&) {
  }
  out.semialg = parse_semialg_file(text, &out.alphabet);
  return out;
}

int cmd_compile(const std::string& mode, const std::string& input, const std::string& output) {
  AhatModel model;
  std::string compiled_text;
  if (mode == "sqrt-nem") {
    model = compile_sqrt_two_layer_nem();
    compiled_text = save_model(model);
  } else {
    std::string text = read_file(input);
    std::vector<Letter> alphabet;
    if (mode == "semialg") {
      SemiAlgFormula f = parse_semialg_file(text, &alphabet);
      model = compile_semialg(f, alphabet);
      compiled_text = save_model(model);
    } else if (mode == "qfpa1") {
      QfpaFormula f = parse_qfpa_file(text, &alphabet);
      model = compile_qfpa_one_layer(f, alphabet);
      compiled_text = save_model(model);
    } else if (mode == "hom-nem") {
      QfpaFormula f = parse_qfpa_file(text, &alphabet);
      model = compile_homogeneous_qfpa_nem(f, alphabet);
      compiled_text = save_model(model);
    } else if (mode == "quad2") {
      Polynomial p = parse_polynomial_file(text, &alphabet);
      CompiledLanguage c = compile_diophantine_equation(p, alphabet);
      compiled_text = save_compiled_language(c);
      model = c.model;
    } else {
      throw Error("unknown compile mode '" + mode + "'");
    }
  }
  write_file(output, compiled_text);
  std::cout << "wrote " << output << " (" << model.layers.size() << " attention layers, alphabet";
  for (const auto& a : model.alphabet) std::cout << " " << a;
  std::cout << ")\n";
  return 0;
}

int cmd_run(const std::string& model_path, const std::string& word_text, bool trace) {
  AhatModel model = load_model(read_file(model_path));
  Word w = word_from_string(word_text, model.alphabet);
  EvalResult result = run_ahat(model, w);
  if (trace) std::cout << trace_json(result);
  std::cout << (result.accept ? "accept" : "reject") << "\n";
  return result.accept ? 0 : 1;
}

int cmd_extract(const std::string& mode, const std::string& model_path,
                const std::string& output, long long budget, long long max_sum) {
  AhatModel model = load_model(read_file(model_path));
  long long prune = std::max<long long>(max_sum, 20);
  std::string body, header;
  if (mode == "semialg") {
    ExtractionResult r = extract_semialg(model, budget, prune);
    body = semialg_to_string(r.formula);
    header = "model-hash: " + model_hash(model) + "\nbranches-explored: " +
             std::to_string(r.branches_explored) +
             "\nbranches-pruned: " + std::to_string(r.branches_pruned);
  } else if (mode == "qfpa") {
    QfpaExtractionResult r = extract_qfpa_one_layer(model, budget, prune);
    body = qfpa_to_string(r.formula);
    header = "model-hash: " + model_hash(model) + "\nbranches-explored: " +
             std::to_string(r.branches_explored) +
             "\nbranches-pruned: " + std::to_string(r.branches_pruned);
  } else {
    throw Error("unknown extract mode '" + mode + "'");
  }
  write_file(output, format_formula_file(model.alphabet, body, header));
  std::cout << "wrote " << output << "\n";
  return 0;
}

int cmd_verify(const std::string& model_path, const std::string& formula_path, long long max_sum,
               long long perms, std::uint64_t seed, const std::string& output) {
  std::string model_text = read_file(model_path);
  std::string formula_text = read_file(formula_path);
  EquivalenceReport report;
  std::vector<Letter> alphabet;
  if (file_has_compiled_section(model_text)) {
    CompiledLanguage c = load_compiled_language(model_text);
    SemiAlgFormula f = parse_semialg_file(formula_text, &alphabet);
    if (alphabet != c.original_letters)
      throw Error("verify: formula alphabet does not match the compiled language's letters");
    auto predicate = [&](const ParikhVector& v) { return eval_semialg(f, v); };
    report = check_equivalence(c, predicate, max_sum);
    report.seed = seed;
  } else {
    AhatModel model = load_model(model_text);
    FormulaSides sides = parse_formula_auto(formula_text);
    alphabet = sides.alphabet;
    if (alphabet != model.alphabet)
      throw Error("verify: formula alphabet does not match the model alphabet");
    if (sides.qfpa)
      report = check_equivalence(model, *sides.qfpa, max_sum, perms, seed);
    else
      report = check_equivalence(model, *sides.semialg, max_sum, perms, seed);
  }
  std::string json = report.to_json(alphabet);
  if (!output.empty()) write_file(output, json);
  std::cout << json;
  return report.equivalent() ? 0 : 1;
}

int cmd_empty(const std::string& model_path, long long max_sum) {
  std::string model_text = read_file(model_path);
  EmptinessResult result;
  std::vector<Letter> letters;
  if (file_has_compiled_section(model_text)) {
    CompiledLanguage c = load_compiled_language(model_text);
    result = bounded_emptiness(c, max_sum);
    letters = c.original_letters;
  } else {
    AhatModel model = load_model(model_text);
    result = bounded_emptiness(model, max_sum);
    letters = model.alphabet;
  }
  auto print_vec = [&](const ParikhVector& v) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < v.size(); i++) out << (i ? "," : "") << v[i];
    out << ")";
    return out.str();
  };
  if (result.witness) {
    std::cout << "witness " << print_vec(*result.witness);
    if (result.nonzero_witness && *result.nonzero_witness != *result.witness)
      std::cout << "; least nonzero witness " << print_vec(*result.nonzero_witness);
    std::cout << "\n";
    return 0;
  }
  std::cout << "none (bounded search up to sum " << max_sum
            << "; not a proof of emptiness)\n";
  return 1;
}

int cmd_baseline(const std::string& kind, const std::string& spec_path,
                 const std::string& word_text) {
  if (kind == "smcm") {
    Smcm machine = load_smcm(read_file(spec_path));
    Word w = word_from_string(word_text, machine.alphabet);
    bool accept = run_smcm(machine, w);
    std::cout << (accept ? "accept" : "reject") << "\n";
    return accept ? 0 : 1;
  }
  if (kind == "ltlc") {
    std::vector<Letter> alphabet;
    LtlPtr f = parse_ltl_count_file(read_file(spec_path), &alphabet);
    Word w = word_from_string(word_text, alphabet);
    bool accept = ltl_count_membership(f, w);
    std::cout << (accept ? "accept" : "reject") << "\n";
    return accept ? 0 : 1;
  }
  throw Error("unknown baseline kind '" + kind + "' (expected smcm or ltlc)");
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();
  CLI::App app{"exact-arithmetic AHAT workbench"};
  app.require_subcommand(1);

  std::string mode, input, output, model_path, formula_path, word_text, kind, spec_path;
  long long max_sum = 15, perms = 100, branch_budget = 1048576;
  std::uint64_t seed = 0;
  bool trace = false;

  auto* compile = app.add_subcommand("compile", "compile a formula file into a model file");
  compile->add_option("--mode", mode, "semialg | qfpa1 | quad2 | sqrt-nem | hom-nem")->required();
  compile->add_option("input", input, "formula file (unused for sqrt-nem)");
  compile->add_option("-o,--out", output, "output model file")->required();

  auto* run = app.add_subcommand("run", "run a model on a word");
  run->add_option("model", model_path)->required();
  run->add_option("word", word_text, "input word (single-character letters concatenate)");
  run->add_flag("--trace", trace, "dump the evaluation trace as JSON");

  auto* extract = app.add_subcommand("extract", "extract a formula from a model file");
  extract->add_option("--mode", mode, "semialg | qfpa")->required();
  extract->add_option("model", model_path)->required();
  extract->add_option("-o,--out", output, "output formula file")->required();
  extract->add_option("--branch-budget", branch_budget, "maximum branches to explore");
  extract->add_option("--max-sum", max_sum, "desk-scale bound used for branch pruning");

  auto* verify = app.add_subcommand("verify", "certify model/formula equivalence by brute force");
  verify->add_option("model", model_path)->required();
  verify->add_option("formula", formula_path)->required();
  verify->add_option("--max-sum", max_sum, "check all Parikh vectors with component sum <= N");
  verify->add_option("--perms", perms, "random permutation trials");
  verify->add_option("--seed", seed, "seed for the permutation trials");
  verify->add_option("-o,--out", output, "also write the JSON report here");

  auto* empty = app.add_subcommand("empty", "bounded emptiness search");
  empty->add_option("model", model_path)->required();
  empty->add_option("--max-sum", max_sum, "search bound");

  auto* baseline = app.add_subcommand("baseline", "run a baseline interpreter");
  baseline->add_option("kind", kind, "smcm | ltlc")->required();
  baseline->add_option("spec", spec_path, "machine or formula file")->required();
  baseline->add_option("word", word_text);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed()) {
      if (mode != "sqrt-nem" && input.empty()) throw Error("compile: missing input formula file");
      return cmd_compile(mode, input, output);
    }
    if (run->parsed()) return cmd_run(model_path, word_text, trace);
    if (extract->parsed()) return cmd_extract(mode, model_path, output, branch_budget, max_sum);
    if (verify->parsed())
      return cmd_verify(model_path, formula_path, max_sum, perms, seed, output);
    if (empty->parsed()) return cmd_empty(model_path, max_sum);
    if (baseline->parsed()) return cmd_baseline(kind, spec_path, word_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
