#include "dfacert/families.hpp"

#include <string>
#include <vector>

namespace dfacert {

Dfa ln_family(int n) {
    if (n < 1) throw InputError("ln_family: n must be positive");
    std::vector<std::string> names{"a"};
    for (int i = 1; i <= n; ++i) names.push_back("b" + std::to_string(i));
    Alphabet alphabet{names};
    // Layout: 0..n = a-chain, n+1..2n = per-letter states, 2n+1 = accepting,
    // 2n+2 = rejecting sink.
    const State acc = 2 * n + 1, dead = 2 * n + 2;
    Dfa d;
    d.alphabet = alphabet;
    d.initial = 0;
    d.delta.assign(2 * n + 3, std::vector<State>(alphabet.size(), dead));
    d.accepting.assign(2 * n + 3, false);
    d.accepting[acc] = true;
    for (int i = 0; i < n; ++i) d.delta[i][0] = i + 1;  // a-chain
    for (int i = 1; i <= n; ++i) {
        d.delta[n][i] = n + i;       // a^n then bi
        d.delta[n + i][i] = acc;     // bi bi accepted
    }
    d.validate();
    return d;
}

Dfa ln_merged(int n, int i, int j) {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
        throw InputError("ln_merged: need distinct i, j in 1..n");
    Dfa base = ln_family(n);
    Word w1(n, 0);  // a^n
    Word w2 = w1;
    Letter bi = base.alphabet.require("b" + std::to_string(i));
    Letter bj = base.alphabet.require("b" + std::to_string(j));
    w1.push_back(bi);
    w1.push_back(bj);
    w2.push_back(bj);
    w2.push_back(bi);
    Dfa cross = complete(prefix_tree_dfa({w1, w2}, base.alphabet));
    return minimize(unite(base, cross));
}

Dfa survival_a(int n) {
    if (n < 1) throw InputError("survival_a: n must be positive");
    Alphabet alphabet{{"a", "b"}};
    // Layout: 0 = start, 1 = accepting sink (first letter b), 2..n+1 =
    // length counter after an initial a, n+2 = rejecting sink.
    const State bsink = 1, dead = n + 2;
    Dfa d;
    d.alphabet = alphabet;
    d.initial = 0;
    d.delta.assign(n + 3, std::vector<State>(2, dead));
    d.accepting.assign(n + 3, false);
    d.accepting[bsink] = true;
    d.accepting[n + 1] = true;  // exactly n letters read
    d.delta[0][0] = 2;
    d.delta[0][1] = bsink;
    d.delta[bsink][0] = bsink;
    d.delta[bsink][1] = bsink;
    for (int s = 2; s <= n; ++s) {
        d.delta[s][0] = s + 1;
        d.delta[s][1] = s + 1;
    }
    d.validate();
    return d;
}

Dfa survival_b(int n) {
    if (n < 1) throw InputError("survival_b: n must be positive");
    Alphabet alphabet{{"a", "b"}};
    // Layout: 0 = start, 1 = accepting sink, 2..n+1 = length mod n cycle
    // (state 1+r holds residue r, with residue 0 stored at n+1, accepting).
    const State bsink = 1;
    Dfa d;
    d.alphabet = alphabet;
    d.initial = 0;
    d.delta.assign(n + 2, std::vector<State>(2, 0));
    d.accepting.assign(n + 2, false);
    d.accepting[bsink] = true;
    d.accepting[n + 1] = true;
    d.delta[0][0] = 2;
    d.delta[0][1] = bsink;
    d.delta[bsink][0] = bsink;
    d.delta[bsink][1] = bsink;
    for (int s = 2; s <= n + 1; ++s) {
        State next = (s == n + 1) ? 2 : s + 1;
        d.delta[s][0] = next;
        d.delta[s][1] = next;
    }
    d.validate();
    return d;
}

Dfa even_count_dfa(const Alphabet& alphabet, const std::string& letter) {
    Letter tracked = alphabet.require(letter);
    Dfa d;
    d.alphabet = alphabet;
    d.initial = 0;
    d.delta.assign(2, std::vector<State>(alphabet.size(), 0));
    d.accepting = {true, false};
    for (Letter a = 0; a < alphabet.size(); ++a) {
        d.delta[0][a] = (a == tracked) ? 1 : 0;
        d.delta[1][a] = (a == tracked) ? 0 : 1;
    }
    d.validate();
    return d;
}

}  // namespace dfacert
