#pragma once

#include <string>
#include <vector>

#include "ahatc/smcm.hpp"

namespace ahatc::testing {

// One counter: +1 on a, -1 on b; accept with the counter masked to zero.
// Recognizes |w|_a = |w|_b.
inline Smcm equal_counts_machine() {
  Smcm m;
  m.states = {"q"};
  m.alphabet = {"a", "b"};
  m.initial = "q";
  m.dim = 1;
  m.updates["a"] = {CounterOp::Inc};
  m.updates["b"] = {CounterOp::Dec};
  for (const auto& letter : m.alphabet)
    for (int mask : {0, 1}) m.delta[{"q", letter, Mask{mask}}] = "q";
  m.accepting.insert({"q", Mask{0}});
  return m;
}

// The non-semilinear language { a^n ((bc)^n (de)^n)^m f^n : n, m >= 2 }.
// Counter 1 holds n through the a's, is drained by b's and refilled by e's;
// counter 2 mirrors it inside each block. Transitions see the pre-update
// zero-masks, which is exactly enough to detect block boundaries: the c that
// follows the n-th b reads counter 1 at zero, and the e that follows the n-th
// d reads counter 2 at zero. Block states are duplicated for "first block"
// and "second or later" so that f is reachable only with m >= 2. All other
// situations fall into a dead sink, so malformed words reject, not error.
inline Smcm family_machine() {
  Smcm m;
  m.states = {"s0", "A1", "A2", "M1", "M2", "Ff", "dead"};
  m.alphabet = {"a", "b", "c", "d", "e", "f"};
  m.initial = "s0";
  m.dim = 2;
  m.updates["a"] = {CounterOp::Inc, CounterOp::Keep};
  m.updates["b"] = {CounterOp::Dec, CounterOp::Keep};
  m.updates["c"] = {CounterOp::Keep, CounterOp::Inc};
  m.updates["d"] = {CounterOp::Keep, CounterOp::Dec};
  m.updates["e"] = {CounterOp::Inc, CounterOp::Keep};
  m.updates["f"] = {CounterOp::Dec, CounterOp::Keep};

  auto arc = [&](const std::string& from, const std::string& letter, int m1, int m2,
                 const std::string& to) { m.delta[{from, letter, Mask{m1, m2}}] = to; };

  arc("s0", "a", 0, 0, "A1");
  arc("A1", "a", 1, 0, "A2");
  arc("A2", "a", 1, 0, "A2");
  arc("A2", "b", 1, 0, "Bb1");  // n >= 2 guaranteed by A2

  for (const std::string phase : {"1", "2"}) {
    std::string bb = "Bb" + phase, bc = "Bc" + phase, bce = "BCend" + phase, dd = "Dd" + phase,
                de = "De" + phase;
    for (const auto& q : {bb, bc, bce, dd, de}) m.states.push_back(q);
    arc(bb, "c", 1, 0, bc);     // first c of the block
    arc(bb, "c", 1, 1, bc);     // mid-block c
    arc(bb, "c", 0, 1, bce);    // counter 1 drained: (bc)^n complete
    arc(bc, "b", 1, 1, bb);
    arc(bce, "d", 0, 1, dd);
    arc(dd, "e", 0, 1, de);     // first e of the block
    arc(dd, "e", 1, 1, de);     // mid-block e
    arc(dd, "e", 1, 0, phase == "1" ? "M1" : "M2");  // counter 2 drained
    arc(de, "d", 1, 1, dd);
  }
  arc("M1", "b", 1, 0, "Bb2");
  arc("M2", "b", 1, 0, "Bb2");
  arc("M2", "f", 1, 0, "Ff");  // m >= 2 guaranteed by M2
  arc("Ff", "f", 1, 0, "Ff");
  m.accepting.insert({"Ff", Mask{0, 0}});

  // Total transition function via the dead sink.
  for (const auto& q : m.states)
    for (const auto& letter : m.alphabet)
      for (int m1 : {0, 1})
        for (int m2 : {0, 1}) {
          auto key = std::make_tuple(q, letter, Mask{m1, m2});
          if (!m.delta.count(key)) m.delta[key] = "dead";
        }
  return m;
}

// a^n ((bc)^n (de)^n)^m f^n
inline Word family_word(int n, int mm) {
  Word w;
  for (int i = 0; i < n; i++) w.push_back("a");
  for (int j = 0; j < mm; j++) {
    for (int i = 0; i < n; i++) {
      w.push_back("b");
      w.push_back("c");
    }
    for (int i = 0; i < n; i++) {
      w.push_back("d");
      w.push_back("e");
    }
  }
  for (int i = 0; i < n; i++) w.push_back("f");
  return w;
}

}  // namespace ahatc::testing
