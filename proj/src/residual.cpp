#include "dfacert/residual.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>

namespace dfacert {

ResidualView residual_view(const Dfa& d) {
    ResidualView v;
    v.minimal = minimize(d);
    const Dfa& m = v.minimal;
    // Canonical numbering is BFS order, so representatives come out of a
    // plain BFS with letters in alphabet order: state i gets the
    // lexicographically least shortest word reaching it, of length <= i.
    v.representatives.assign(m.state_count(), Word{});
    std::vector<bool> seen(m.state_count(), false);
    std::queue<State> work;
    seen[m.initial] = true;
    work.push(m.initial);
    while (!work.empty()) {
        State s = work.front();
        work.pop();
        for (Letter a = 0; a < m.alphabet.size(); ++a) {
            State t = m.next(s, a);
            if (seen[t]) continue;
            seen[t] = true;
            v.representatives[t] = v.representatives[s];
            v.representatives[t].push_back(a);
            work.push(t);
        }
    }
    return v;
}

std::vector<Word> representatives_bounded(const ResidualView& v, int k) {
    if (k < 1 || k > v.index())
        throw std::out_of_range("representatives_bounded: k must be in 1..index");
    std::vector<Word> out(v.representatives.begin(), v.representatives.begin() + k);
    for ([[maybe_unused]] const Word& w : out)
        assert(static_cast<int>(w.size()) <= k - 1);
    return out;
}

Word distinguishing_tail(const ResidualView& v, State q1, State q2) {
    if (q1 == q2)
        throw std::invalid_argument("distinguishing_tail: states must differ");
    const Dfa& m = v.minimal;
    if (q1 < 0 || q2 < 0 || q1 >= m.state_count() || q2 >= m.state_count())
        throw std::out_of_range("distinguishing_tail: state out of range");
    auto distinguished = [&](State a, State b) { return m.accepting[a] != m.accepting[b]; };
    if (distinguished(q1, q2)) return Word{};
    // BFS over ordered state pairs; discovery order gives the
    // lexicographically least shortest tail.
    const int n = m.state_count();
    std::vector<std::pair<int, Letter>> parent(n * n, {-1, 0});
    std::vector<bool> seen(n * n, false);
    auto id = [&](State a, State b) { return a * n + b; };
    std::queue<int> work;
    seen[id(q1, q2)] = true;
    work.push(id(q1, q2));
    while (!work.empty()) {
        int cur = work.front();
        work.pop();
        State a = cur / n, b = cur % n;
        for (Letter x = 0; x < m.alphabet.size(); ++x) {
            State na = m.next(a, x), nb = m.next(b, x);
            int nid = id(na, nb);
            if (seen[nid]) continue;
            seen[nid] = true;
            parent[nid] = {cur, x};
            if (distinguished(na, nb)) {
                Word t;
                for (int p = nid; p != id(q1, q2); p = parent[p].first)
                    t.push_back(parent[p].second);
                std::reverse(t.begin(), t.end());
                assert(static_cast<int>(t.size()) <= m.state_count());
                return t;
            }
            if (na != nb) work.push(nid);  // equal pairs can never split again
        }
    }
    throw std::logic_error("distinguishing_tail: states of a minimal DFA must be distinguishable");
}

}  // namespace dfacert
