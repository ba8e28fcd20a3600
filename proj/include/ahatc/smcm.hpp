#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ahatc/ahat.hpp"

namespace ahatc {

// Simplified multicounter machine: counter updates depend only on the input
// letter; transitions read only the zero-mask of the counters (taken before
// the update). Acceptance is by masked configuration after the whole word.
enum class CounterOp { Inc, Dec, Reset, Keep };  // +1, -1, *0, *1

using Mask = std::vector<int>;  // 0 iff the counter is 0

struct Smcm {
  std::vector<std::string> states;
  std::vector<Letter> alphabet;
  std::string initial;
  size_t dim = 0;
  std::map<std::tuple<std::string, Letter, Mask>, std::string> delta;
  std::map<Letter, std::vector<CounterOp>> updates;
  std::set<std::pair<std::string, Mask>> accepting;

  void validate() const;
};

Mask mask_of(const std::vector<long long>& counters);

// Deterministic simulation from (initial, 0). The empty word is allowed:
// acceptance is then decided by the initial configuration. An encountered
// (state, letter, mask) triple without a transition is an error naming it.
bool run_smcm(const Smcm& machine, const Word& word);

std::string save_smcm(const Smcm& machine);
Smcm load_smcm(const std::string& json_text);

}  // namespace ahatc
