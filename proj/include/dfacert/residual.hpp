#pragma once

#include <vector>

#include "dfacert/automata.hpp"

namespace dfacert {

// Canonical view of a regular language through its minimal automaton: the
// number of right-congruence classes, a shortest representative word per
// class, and the class of any word. Immutable once built.
struct ResidualView {
    Dfa minimal;                         // canonical minimal DFA
    std::vector<Word> representatives;   // shortest word reaching each state

    int index() const { return minimal.state_count(); }
    State class_of(const Word& w) const { return minimal.run(w); }
};

ResidualView residual_view(const Dfa& d);

// The representatives of the first k states in breadth-first order: k
// pairwise non-equivalent words, each of length at most k-1.
std::vector<Word> representatives_bounded(const ResidualView& v, int k);

// Shortest word t such that exactly one of the runs from q1 and q2 on t ends
// accepting; ties broken lexicographically by alphabet order. Requires
// q1 != q2; |t| <= index by construction.
Word distinguishing_tail(const ResidualView& v, State q1, State q2);

}  // namespace dfacert
