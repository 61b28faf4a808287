#pragma once

#include "dfacert/automata.hpp"

namespace dfacert {

// The n-indexed family over {a, b1, ..., bn} accepting exactly
// { a^n bi bi : 1 <= i <= n }. Its minimal automaton has 2n+3 states: the
// a-chain, one state per bi, an accepting state, and a rejecting sink.
Dfa ln_family(int n);

// ln_family(n) with the bi- and bj-classes identified: the minimal automaton
// of L_n plus the two cross words a^n bi bj and a^n bj bi. It has 2n+2
// states and disagrees with L_n on exactly those two words.
Dfa ln_merged(int n, int i, int j);

// Survival family over {a, b}: words starting with b, plus words of length
// exactly n. Minimal automaton has n+3 states.
Dfa survival_a(int n);

// The alternative claimant for the survival family: words starting with b,
// plus words starting with a whose length is divisible by n. Minimal
// automaton has n+2 states; its shortest disagreement with survival_a(n)
// has length 2n.
Dfa survival_b(int n);

// Words over `alphabet` containing an even number of `letter`; handy in
// examples and tests (index 2).
Dfa even_count_dfa(const Alphabet& alphabet, const std::string& letter);

}  // namespace dfacert
