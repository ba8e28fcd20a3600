#include "ahatc/smcm.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace ahatc {

using nlohmann::json;

Mask mask_of(const std::vector<long long>& counters) {
  Mask m(counters.size());
  for (size_t i = 0; i < counters.size(); i++) m[i] = counters[i] == 0 ? 0 : 1;
  return m;
}

void Smcm::validate() const {
  if (states.empty()) throw Error("smcm: no states");
  auto known = [&](const std::string& q) {
    return std::find(states.begin(), states.end(), q) != states.end();
  };
  if (!known(initial)) throw Error("smcm: unknown initial state '" + initial + "'");
  for (const auto& [key, next] : delta) {
    const auto& [state, letter, mask] = key;
    if (!known(state) || !known(next)) throw Error("smcm: transition over unknown state");
    if (mask.size() != dim) throw Error("smcm: transition mask arity mismatch");
    if (std::find(alphabet.begin(), alphabet.end(), letter) == alphabet.end())
      throw Error("smcm: transition over unknown letter '" + letter + "'");
  }
  for (const auto& a : alphabet) {
    auto it = updates.find(a);
    if (it == updates.end()) throw Error("smcm: letter '" + a + "' has no counter update");
    if (it->second.size() != dim) throw Error("smcm: update arity mismatch for '" + a + "'");
  }
  for (const auto& [state, mask] : accepting) {
    if (!known(state)) throw Error("smcm: accepting state unknown");
    if (mask.size() != dim) throw Error("smcm: accepting mask arity mismatch");
  }
}

static std::string mask_to_string(const Mask& m) {
  std::string s;
  for (int b : m) s += b ? '1' : '0';
  return s;
}

bool run_smcm(const Smcm& machine, const Word& word) {
  machine.validate();
  std::string state = machine.initial;
  std::vector<long long> counters(machine.dim, 0);
  for (const auto& letter : word) {
    auto upd = machine.updates.find(letter);
    if (upd == machine.updates.end())
      throw Error("run_smcm: letter '" + letter + "' not in the machine alphabet");
    Mask m = mask_of(counters);
    auto it = machine.delta.find({state, letter, m});
    if (it == machine.delta.end())
      throw Error("run_smcm: no transition for (" + state + ", " + letter + ", " +
                  mask_to_string(m) + ")");
    for (size_t i = 0; i < machine.dim; i++) {
      switch (upd->second[i]) {
        case CounterOp::Inc: counters[i]++; break;
        case CounterOp::Dec: counters[i]--; break;
        case CounterOp::Reset: counters[i] = 0; break;
        case CounterOp::Keep: break;
      }
    }
    state = it->second;
  }
  return machine.accepting.count({state, mask_of(counters)}) > 0;
}

namespace {

const char* op_text(CounterOp op) {
  switch (op) {
    case CounterOp::Inc: return "+1";
    case CounterOp::Dec: return "-1";
    case CounterOp::Reset: return "*0";
    case CounterOp::Keep: return "*1";
  }
  return "?";
}

CounterOp op_from(const std::string& s) {
  if (s == "+1") return CounterOp::Inc;
  if (s == "-1") return CounterOp::Dec;
  if (s == "*0") return CounterOp::Reset;
  if (s == "*1") return CounterOp::Keep;
  throw Error("smcm file: unknown counter operation '" + s + "'");
}

Mask mask_from(const std::string& s) {
  Mask m;
  for (char c : s) {
    if (c != '0' && c != '1') throw Error("smcm file: mask must be a 0/1 string");
    m.push_back(c - '0');
  }
  return m;
}

}  // namespace

std::string save_smcm(const Smcm& machine) {
  json j;
  j["states"] = machine.states;
  j["alphabet"] = machine.alphabet;
  j["initial"] = machine.initial;
  j["dim"] = machine.dim;
  json delta = json::array();
  for (const auto& [key, next] : machine.delta) {
    const auto& [state, letter, mask] = key;
    delta.push_back(json::array({state, letter, mask_to_string(mask), next}));
  }
  j["delta"] = delta;
  json updates = json::object();
  for (const auto& [letter, ops] : machine.updates) {
    json row = json::array();
    for (auto op : ops) row.push_back(op_text(op));
    updates[letter] = row;
  }
  j["updates"] = updates;
  json accepting = json::array();
  for (const auto& [state, mask] : machine.accepting)
    accepting.push_back(json::array({state, mask_to_string(mask)}));
  j["accepting"] = accepting;
  return j.dump(2) + "\n";
}

Smcm load_smcm(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("smcm file: invalid JSON: ") + e.what());
  }
  Smcm m;
  for (const auto& s : j.at("states")) m.states.push_back(s.get<std::string>());
  for (const auto& s : j.at("alphabet")) m.alphabet.push_back(s.get<std::string>());
  m.initial = j.at("initial").get<std::string>();
  m.dim = j.at("dim").get<size_t>();
  for (const auto& row : j.at("delta")) {
    if (!row.is_array() || row.size() != 4)
      throw Error("smcm file: delta rows are [state, letter, mask, state]");
    m.delta[{row[0].get<std::string>(), row[1].get<std::string>(),
             mask_from(row[2].get<std::string>())}] = row[3].get<std::string>();
  }
  for (auto it = j.at("updates").begin(); it != j.at("updates").end(); ++it) {
    std::vector<CounterOp> ops;
    for (const auto& s : it.value()) ops.push_back(op_from(s.get<std::string>()));
    m.updates[it.key()] = ops;
  }
  for (const auto& row : j.at("accepting"))
    m.accepting.insert({row[0].get<std::string>(), mask_from(row[1].get<std::string>())});
  m.validate();
  return m;
}

}  // namespace ahatc
