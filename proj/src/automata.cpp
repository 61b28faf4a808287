#include "dfacert/automata.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dfacert {

namespace {

bool valid_letter_name(const std::string& name) {
    if (name.empty() || name == "#") return false;
    for (char c : name)
        if (std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    std::unordered_set<std::string> seen;
    for (const auto& name : letters_) {
        if (!valid_letter_name(name))
            throw InputError("invalid letter name: '" + name + "'");
        if (!seen.insert(name).second)
            throw InputError("duplicate letter name: '" + name + "'");
    }
}

Letter Alphabet::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (letters_[i] == name) return i;
    return -1;
}

Letter Alphabet::require(const std::string& name) const {
    Letter a = find(name);
    if (a < 0) throw InputError("unknown letter: '" + name + "'");
    return a;
}

Word Alphabet::word_from_chars(const std::string& chars) const {
    Word w;
    for (char c : chars) w.push_back(require(std::string(1, c)));
    return w;
}

Word Alphabet::word_from_tokens(const std::string& tokens) const {
    Word w;
    std::istringstream in(tokens);
    std::string tok;
    while (in >> tok) w.push_back(require(tok));
    return w;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
    if (w.empty()) return "<eps>";
    bool all_single = true;
    for (Letter a : w)
        if (alphabet.name(a).size() != 1) all_single = false;
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && !all_single) out += '.';
        out += alphabet.name(w[i]);
    }
    return out;
}

State Dfa::run_from(State s, const Word& w) const {
    for (Letter a : w) s = delta[s][a];
    return s;
}

void Dfa::validate() const {
    const int n = state_count();
    if (n <= 0) throw InputError("automaton must have at least one state");
    if (initial < 0 || initial >= n) throw InputError("initial state out of range");
    if (static_cast<int>(accepting.size()) != n)
        throw InputError("accepting vector size mismatch");
    for (const auto& row : delta) {
        if (static_cast<int>(row.size()) != alphabet.size())
            throw InputError("transition row size mismatch");
        for (State t : row)
            if (t < 0 || t >= n) throw InputError("transition target out of range");
    }
}

bool PartialDfa::is_complete() const {
    for (const auto& row : delta)
        for (State t : row)
            if (t == kUndefined) return false;
    return true;
}

void PartialDfa::validate() const {
    const int n = state_count();
    if (n <= 0) throw InputError("automaton must have at least one state");
    if (initial < 0 || initial >= n) throw InputError("initial state out of range");
    if (static_cast<int>(accepting.size()) != n)
        throw InputError("accepting vector size mismatch");
    for (const auto& row : delta) {
        if (static_cast<int>(row.size()) != alphabet.size())
            throw InputError("transition row size mismatch");
        for (State t : row)
            if (t != kUndefined && (t < 0 || t >= n))
                throw InputError("transition target out of range");
    }
}

Dfa complete(const PartialDfa& p) {
    p.validate();
    Dfa d;
    d.alphabet = p.alphabet;
    d.initial = p.initial;
    d.delta = p.delta;
    d.accepting = p.accepting;
    if (p.is_complete()) return d;
    const State sink = p.state_count();
    for (auto& row : d.delta)
        for (State& t : row)
            if (t == kUndefined) t = sink;
    d.delta.emplace_back(p.alphabet.size(), sink);
    d.accepting.push_back(false);
    return d;
}

bool accepts(const Dfa& d, const Word& w) {
    for (Letter a : w)
        if (a < 0 || a >= d.alphabet.size())
            throw InputError("word contains a letter outside the automaton's alphabet");
    return d.accepting[d.run(w)];
}

Dfa product(const Dfa& d1, const Dfa& d2, const std::function<bool(bool, bool)>& combine) {
    if (d1.alphabet != d2.alphabet) throw InputError("product: alphabet mismatch");
    const int letters = d1.alphabet.size();
    std::unordered_map<long long, State> id;
    auto key = [&](State a, State b) {
        return static_cast<long long>(a) * d2.state_count() + b;
    };
    Dfa out;
    out.alphabet = d1.alphabet;
    out.initial = 0;
    std::vector<std::pair<State, State>> pairs;
    std::queue<State> work;
    id[key(d1.initial, d2.initial)] = 0;
    pairs.emplace_back(d1.initial, d2.initial);
    work.push(0);
    out.delta.emplace_back(letters, 0);
    out.accepting.push_back(combine(d1.accepting[d1.initial], d2.accepting[d2.initial]));
    while (!work.empty()) {
        State s = work.front();
        work.pop();
        auto [p, q] = pairs[s];
        for (Letter a = 0; a < letters; ++a) {
            State np = d1.next(p, a), nq = d2.next(q, a);
            auto [it, inserted] = id.emplace(key(np, nq), static_cast<State>(pairs.size()));
            if (inserted) {
                pairs.emplace_back(np, nq);
                out.delta.emplace_back(letters, 0);
                out.accepting.push_back(combine(d1.accepting[np], d2.accepting[nq]));
                work.push(it->second);
            }
            out.delta[s][a] = it->second;
        }
    }
    return out;
}

Dfa intersect(const Dfa& d1, const Dfa& d2) {
    return product(d1, d2, [](bool a, bool b) { return a && b; });
}

Dfa unite(const Dfa& d1, const Dfa& d2) {
    return product(d1, d2, [](bool a, bool b) { return a || b; });
}

Dfa difference(const Dfa& d1, const Dfa& d2) {
    return product(d1, d2, [](bool a, bool b) { return a && !b; });
}

Dfa symmetric_difference(const Dfa& d1, const Dfa& d2) {
    return product(d1, d2, [](bool a, bool b) { return a != b; });
}

Dfa complement(const Dfa& d) {
    Dfa out = d;
    for (size_t i = 0; i < out.accepting.size(); ++i)
        out.accepting[i] = !out.accepting[i];
    return out;
}

bool is_empty(const Dfa& d) {
    return !shortest_accepted(d).has_value();
}

std::optional<Word> shortest_accepted(const Dfa& d) {
    if (d.accepting[d.initial]) return Word{};
    const int letters = d.alphabet.size();
    std::vector<std::pair<State, Letter>> parent(d.state_count(), {kUndefined, 0});
    std::vector<bool> seen(d.state_count(), false);
    std::queue<State> work;
    seen[d.initial] = true;
    work.push(d.initial);
    auto reconstruct = [&](State s) {
        Word w;
        while (s != d.initial) {
            w.push_back(parent[s].second);
            s = parent[s].first;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    while (!work.empty()) {
        State s = work.front();
        work.pop();
        for (Letter a = 0; a < letters; ++a) {
            State t = d.next(s, a);
            if (seen[t]) continue;
            seen[t] = true;
            parent[t] = {s, a};
            if (d.accepting[t]) return reconstruct(t);
            work.push(t);
        }
    }
    return std::nullopt;
}

namespace {

// States reachable from the initial state, in BFS discovery order.
std::vector<State> reachable_order(const Dfa& d) {
    std::vector<State> order;
    std::vector<bool> seen(d.state_count(), false);
    std::queue<State> work;
    seen[d.initial] = true;
    work.push(d.initial);
    while (!work.empty()) {
        State s = work.front();
        work.pop();
        order.push_back(s);
        for (Letter a = 0; a < d.alphabet.size(); ++a) {
            State t = d.next(s, a);
            if (!seen[t]) {
                seen[t] = true;
                work.push(t);
            }
        }
    }
    return order;
}

// Renumbers states by BFS discovery order; assumes all states reachable.
Dfa bfs_renumber(const Dfa& d) {
    std::vector<State> order = reachable_order(d);
    std::vector<State> newid(d.state_count(), kUndefined);
    for (size_t i = 0; i < order.size(); ++i) newid[order[i]] = static_cast<State>(i);
    Dfa out;
    out.alphabet = d.alphabet;
    out.initial = 0;
    out.delta.assign(order.size(), std::vector<State>(d.alphabet.size(), 0));
    out.accepting.assign(order.size(), false);
    for (size_t i = 0; i < order.size(); ++i) {
        State s = order[i];
        out.accepting[i] = d.accepting[s];
        for (Letter a = 0; a < d.alphabet.size(); ++a)
            out.delta[i][a] = newid[d.next(s, a)];
    }
    return out;
}

}  // namespace

Dfa minimize(const Dfa& d) {
    d.validate();
    // Restrict to the reachable part first so dead states cannot pollute the
    // partition.
    std::vector<State> order = reachable_order(d);
    std::vector<State> compact(d.state_count(), kUndefined);
    for (size_t i = 0; i < order.size(); ++i) compact[order[i]] = static_cast<State>(i);
    const int n = static_cast<int>(order.size());
    const int letters = d.alphabet.size();

    // Moore refinement: split classes by (class, successor-class profile).
    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = d.accepting[order[i]] ? 1 : 0;
    int class_count = 2;
    {
        bool any0 = false, any1 = false;
        for (int c : cls) (c ? any1 : any0) = true;
        if (!any0 || !any1) {
            class_count = 1;
            std::fill(cls.begin(), cls.end(), 0);
        }
    }
    for (;;) {
        std::map<std::vector<int>, int> signature_id;
        std::vector<int> next_cls(n);
        for (int i = 0; i < n; ++i) {
            std::vector<int> sig;
            sig.reserve(letters + 1);
            sig.push_back(cls[i]);
            for (Letter a = 0; a < letters; ++a)
                sig.push_back(cls[compact[d.next(order[i], a)]]);
            auto [it, inserted] = signature_id.emplace(std::move(sig),
                                                       static_cast<int>(signature_id.size()));
            (void)inserted;
            next_cls[i] = it->second;
        }
        int next_count = static_cast<int>(signature_id.size());
        cls.swap(next_cls);
        if (next_count == class_count) break;
        class_count = next_count;
    }

    Dfa quotient;
    quotient.alphabet = d.alphabet;
    quotient.initial = cls[compact[d.initial]];
    quotient.delta.assign(class_count, std::vector<State>(letters, 0));
    quotient.accepting.assign(class_count, false);
    for (int i = 0; i < n; ++i) {
        int c = cls[i];
        quotient.accepting[c] = d.accepting[order[i]];
        for (Letter a = 0; a < letters; ++a)
            quotient.delta[c][a] = cls[compact[d.next(order[i], a)]];
    }
    return bfs_renumber(quotient);
}

bool equivalent(const Dfa& d1, const Dfa& d2) {
    return !shortest_disagreement(d1, d2).has_value();
}

std::optional<Word> shortest_disagreement(const Dfa& d1, const Dfa& d2) {
    return shortest_accepted(symmetric_difference(d1, d2));
}

PartialDfa prefix_tree_dfa(const std::vector<Word>& words, const Alphabet& alphabet) {
    std::vector<Word> prefixes;
    {
        std::map<std::pair<size_t, Word>, bool> ordered;  // (length, word) -> is member
        ordered[{0, Word{}}] = false;
        for (const Word& w : words) {
            for (Letter a : w)
                if (a < 0 || a >= alphabet.size())
                    throw InputError("prefix_tree_dfa: word letter outside alphabet");
            for (size_t len = 1; len <= w.size(); ++len)
                ordered.insert({{len, Word(w.begin(), w.begin() + len)}, false});
            ordered[{w.size(), w}] = true;
        }
        PartialDfa out;
        out.alphabet = alphabet;
        out.initial = 0;
        std::map<Word, State> id;
        for (const auto& [key, member] : ordered) {
            id[key.second] = static_cast<State>(out.delta.size());
            out.delta.emplace_back(alphabet.size(), kUndefined);
            out.accepting.push_back(member);
        }
        for (const auto& [key, member] : ordered) {
            (void)member;
            const Word& p = key.second;
            if (p.empty()) continue;
            Word head(p.begin(), p.end() - 1);
            out.delta[id[head]][p.back()] = id[p];
        }
        return out;
    }
}

namespace {

State find_or_add_rejecting_sink(Dfa& d) {
    for (State s = 0; s < d.state_count(); ++s) {
        if (d.accepting[s]) continue;
        bool loops = true;
        for (Letter a = 0; a < d.alphabet.size(); ++a)
            if (d.next(s, a) != s) loops = false;
        if (loops) return s;
    }
    State sink = d.state_count();
    d.delta.emplace_back(d.alphabet.size(), sink);
    d.accepting.push_back(false);
    return sink;
}

Dfa extend_alphabet(const Dfa& d, const std::string& fresh) {
    if (d.alphabet.find(fresh) >= 0)
        throw InputError("fresh letter '" + fresh + "' already in alphabet");
    std::vector<std::string> names = d.alphabet.letters();
    names.push_back(fresh);
    Dfa out;
    out.alphabet = Alphabet(std::move(names));
    out.initial = d.initial;
    out.accepting = d.accepting;
    out.delta.reserve(d.state_count());
    for (const auto& row : d.delta) {
        auto extended = row;
        extended.push_back(kUndefined);  // filled by the caller
        out.delta.push_back(std::move(extended));
    }
    return out;
}

}  // namespace

Dfa extend_with_reset_to_sink(const Dfa& d, const std::string& fresh) {
    Dfa out = extend_alphabet(d, fresh);
    const Letter f = out.alphabet.size() - 1;
    State sink = find_or_add_rejecting_sink(out);
    for (auto& row : out.delta) row[f] = sink;
    out.validate();
    return out;
}

Dfa extend_with_reset_to_initial(const Dfa& d, const std::string& fresh) {
    Dfa out = extend_alphabet(d, fresh);
    const Letter f = out.alphabet.size() - 1;
    for (auto& row : out.delta) row[f] = out.initial;
    out.validate();
    return out;
}

bool is_finite_language(const Dfa& d) {
    // Live states: those from which an accepting state is reachable.
    const int n = d.state_count();
    std::vector<std::vector<State>> rev(n);
    for (State s = 0; s < n; ++s)
        for (Letter a = 0; a < d.alphabet.size(); ++a)
            rev[d.next(s, a)].push_back(s);
    std::vector<bool> live(n, false);
    std::queue<State> work;
    for (State s = 0; s < n; ++s)
        if (d.accepting[s]) {
            live[s] = true;
            work.push(s);
        }
    while (!work.empty()) {
        State s = work.front();
        work.pop();
        for (State p : rev[s])
            if (!live[p]) {
                live[p] = true;
                work.push(p);
            }
    }
    // The language is infinite iff a cycle through live states is reachable
    // from the initial state. DFS over (reachable, live) states.
    std::vector<int> mark(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::pair<State, Letter>> stack;
    if (!live[d.initial]) return true;
    stack.emplace_back(d.initial, 0);
    mark[d.initial] = 1;
    while (!stack.empty()) {
        auto& [s, a] = stack.back();
        if (a >= d.alphabet.size()) {
            mark[s] = 2;
            stack.pop_back();
            continue;
        }
        State t = d.next(s, a++);
        if (!live[t]) continue;
        if (mark[t] == 1) return false;  // cycle among live states
        if (mark[t] == 0) {
            mark[t] = 1;
            stack.emplace_back(t, 0);
        }
    }
    return true;
}

bool is_subset(const Dfa& d1, const Dfa& d2) {
    return is_empty(difference(d1, d2));
}

bool is_disjoint(const Dfa& d1, const Dfa& d2) {
    return is_empty(intersect(d1, d2));
}

}  // namespace dfacert
