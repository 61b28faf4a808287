#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "dfacert/automata.hpp"
#include "dfacert/game.hpp"
#include "dfacert/io.hpp"

namespace testutil {

using namespace dfacert;

inline Alphabet ab() { return Alphabet{{"a", "b"}}; }

// The worked two-state interaction over {a, b}:
//   x = a b # a a a b # # a
//   y = 1 2 2 1 2 1 2 2 1 1 2
// Ten completed rounds; eleven positions.
inline Transcript table1_transcript() {
    Transcript t;
    t.k = 2;
    t.alphabet = ab();
    t.y1 = 1;
    const Letter a = 0, b = 1;
    t.rounds = {{a, 2}, {b, 2}, {kResetLetter, 1}, {a, 2}, {a, 1},
                {a, 2}, {b, 2}, {kResetLetter, 1}, {kResetLetter, 1}, {a, 2}};
    return t;
}

// Compact constructor: rows[s][a] = target, acc = accepting ids.
inline Dfa make_dfa(const Alphabet& alphabet, State initial,
                    const std::vector<std::vector<State>>& rows,
                    const std::vector<State>& acc) {
    Dfa d;
    d.alphabet = alphabet;
    d.initial = initial;
    d.delta = rows;
    d.accepting.assign(rows.size(), false);
    for (State s : acc) d.accepting[s] = true;
    d.validate();
    return d;
}

// All words over `alphabet` up to the given length, in length-lex order.
inline std::vector<Word> words_up_to(const Alphabet& alphabet, int max_len) {
    std::vector<Word> out{{}};
    size_t level_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        size_t level_end = out.size();
        for (size_t i = level_begin; i < level_end; ++i)
            for (Letter a = 0; a < alphabet.size(); ++a) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        level_begin = level_end;
    }
    return out;
}

// Acceptance under a partial automaton: undefined transitions reject.
inline bool partial_accepts(const PartialDfa& p, const Word& w) {
    State s = p.initial;
    for (Letter a : w) {
        s = p.delta[s][a];
        if (s == kUndefined) return false;
    }
    return p.accepting[s];
}

// Uniformly random complete DFA, over {a, b} unless told otherwise.
inline Dfa random_dfa(std::mt19937& rng, int max_states = 4, const Alphabet& alphabet = ab()) {
    std::uniform_int_distribution<int> pick_states(1, max_states);
    int n = pick_states(rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    Dfa d;
    d.alphabet = alphabet;
    d.initial = 0;
    d.delta.assign(n, std::vector<State>(alphabet.size(), 0));
    d.accepting.assign(n, false);
    for (State s = 0; s < n; ++s) {
        for (Letter a = 0; a < alphabet.size(); ++a) d.delta[s][a] = pick(rng);
        d.accepting[s] = coin(rng) == 1;
    }
    return d;
}

// Distinct random minimal DFAs over {a, b} with index in [min_index, max_index].
inline std::vector<Dfa> random_minimal_dfas(unsigned seed, int count, int min_index,
                                            int max_index) {
    std::mt19937 rng(seed);
    std::vector<Dfa> out;
    std::set<std::string> seen;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && ++guard < 200000) {
        Dfa m = minimize(random_dfa(rng, max_index));
        if (m.state_count() < min_index || m.state_count() > max_index) continue;
        if (seen.insert(format_dfa_text(m)).second) out.push_back(std::move(m));
    }
    return out;
}

}  // namespace testutil
