#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dfacert/scale.hpp"

namespace dfacert {

using State = int;
using Letter = int;                 // index into an Alphabet
using Word = std::vector<Letter>;

// A fixed, ordered set of letter names. The order is part of the alphabet's
// identity: it drives every deterministic enumeration and tie-break in the
// library. The name "#" is reserved for the game reset letter and cannot be
// an alphabet letter.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);

    int size() const { return static_cast<int>(letters_.size()); }
    const std::string& name(Letter a) const { return letters_.at(a); }
    const std::vector<std::string>& letters() const { return letters_; }

    // Index of a letter name, or -1 if unknown.
    Letter find(const std::string& name) const;
    // Like find, but throws InputError for unknown names.
    Letter require(const std::string& name) const;

    bool operator==(const Alphabet& other) const { return letters_ == other.letters_; }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

    // Builds a word from single-character letter names ("abba").
    Word word_from_chars(const std::string& chars) const;
    // Builds a word from whitespace-separated letter names ("a b1 b1").
    Word word_from_tokens(const std::string& tokens) const;

private:
    std::vector<std::string> letters_;
};

// Human-readable rendering; concatenates single-char letters, otherwise
// joins with '.'; the empty word prints as "<eps>".
std::string format_word(const Alphabet& alphabet, const Word& w);

// Complete deterministic finite automaton. Every (state, letter) pair has a
// transition. States are 0-based; `initial` must be a valid state.
struct Dfa {
    Alphabet alphabet;
    State initial = 0;
    std::vector<std::vector<State>> delta;  // delta[state][letter]
    std::vector<bool> accepting;

    int state_count() const { return static_cast<int>(delta.size()); }
    State next(State s, Letter a) const { return delta[s][a]; }
    State run_from(State s, const Word& w) const;
    State run(const Word& w) const { return run_from(initial, w); }

    void validate() const;  // throws InputError on a malformed automaton
};

// Like Dfa, but transitions may be missing (kUndefined).
inline constexpr State kUndefined = -1;

struct PartialDfa {
    Alphabet alphabet;
    State initial = 0;
    std::vector<std::vector<State>> delta;  // kUndefined marks a hole
    std::vector<bool> accepting;

    int state_count() const { return static_cast<int>(delta.size()); }
    bool is_complete() const;
    void validate() const;
};

// Completes a partial automaton: if any transition is missing, a fresh
// non-accepting sink is appended and all holes (and the sink's own
// transitions) point to it. The language is unchanged. A complete input is
// returned as-is, including its state numbering.
Dfa complete(const PartialDfa& p);

bool accepts(const Dfa& d, const Word& w);

// Reachable-part product automaton; acceptance decided by `combine` on the
// two component acceptance bits. Pair states are numbered in discovery
// order, so the result is deterministic.
Dfa product(const Dfa& d1, const Dfa& d2, const std::function<bool(bool, bool)>& combine);

Dfa intersect(const Dfa& d1, const Dfa& d2);
Dfa unite(const Dfa& d1, const Dfa& d2);
Dfa difference(const Dfa& d1, const Dfa& d2);
Dfa symmetric_difference(const Dfa& d1, const Dfa& d2);

Dfa complement(const Dfa& d);

bool is_empty(const Dfa& d);

// Minimum-length accepted word, ties broken lexicographically by alphabet
// order; absent iff the language is empty.
std::optional<Word> shortest_accepted(const Dfa& d);

// Canonical minimal complete DFA: partition refinement, then states
// renumbered by breadth-first discovery from the initial state with letters
// taken in alphabet order. Two equivalent inputs minimize to identical
// automata (same arrays, not merely isomorphic).
Dfa minimize(const Dfa& d);

bool equivalent(const Dfa& d1, const Dfa& d2);

// Shortest word in the symmetric difference, or absent when equivalent.
std::optional<Word> shortest_disagreement(const Dfa& d1, const Dfa& d2);

// Prefix-tree acceptor: states are the prefixes of words in `words`, ordered
// by (length, lexicographic); accepts exactly `words`.
PartialDfa prefix_tree_dfa(const std::vector<Word>& words, const Alphabet& alphabet);

// Extends the alphabet by `fresh` and routes it from every state into a
// rejecting sink (reusing an existing one when present). The language over
// the old alphabet is unchanged; any word containing `fresh` is rejected.
Dfa extend_with_reset_to_sink(const Dfa& d, const std::string& fresh);

// Extends the alphabet by `fresh` and routes it from every state back to the
// initial state. The resulting language is (Sigma* fresh)* L(d).
Dfa extend_with_reset_to_initial(const Dfa& d, const std::string& fresh);

// True iff no cycle lies on a path from the initial state to an accepting
// state, i.e. the language is finite.
bool is_finite_language(const Dfa& d);

bool is_subset(const Dfa& d1, const Dfa& d2);     // L(d1) subseteq L(d2)
bool is_disjoint(const Dfa& d1, const Dfa& d2);   // L(d1) cap L(d2) = empty

}  // namespace dfacert
