#include "dfacert/separation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace dfacert {

std::vector<bool> reachable_via(const Dfa& a, const Dfa& aprime) {
    if (a.alphabet != aprime.alphabet) throw InputError("reachable_via: alphabet mismatch");
    // Reachability in the product: (q, p) with p accepting marks q.
    std::vector<bool> out(a.state_count(), false);
    std::vector<bool> seen(static_cast<size_t>(a.state_count()) * aprime.state_count(), false);
    auto id = [&](State q, State p) {
        return static_cast<size_t>(q) * aprime.state_count() + p;
    };
    std::queue<std::pair<State, State>> work;
    seen[id(a.initial, aprime.initial)] = true;
    work.emplace(a.initial, aprime.initial);
    while (!work.empty()) {
        auto [q, p] = work.front();
        work.pop();
        if (aprime.accepting[p]) out[q] = true;
        for (Letter x = 0; x < a.alphabet.size(); ++x) {
            State nq = a.next(q, x), np = aprime.next(p, x);
            if (!seen[id(nq, np)]) {
                seen[id(nq, np)] = true;
                work.emplace(nq, np);
            }
        }
    }
    return out;
}

bool is_separator(const Dfa& a, const Dfa& a1, const Dfa& a2) {
    if (a.alphabet != a1.alphabet || a.alphabet != a2.alphabet)
        throw InputError("is_separator: alphabet mismatch");
    std::vector<bool> via1 = reachable_via(a, a1);
    std::vector<bool> via2 = reachable_via(a, a2);
    bool by_reach = true;
    for (State q = 0; q < a.state_count(); ++q) {
        if (via1[q] && !a.accepting[q]) by_reach = false;
        if (via2[q] && a.accepting[q]) by_reach = false;
    }
    bool by_products = is_subset(a1, a) && is_disjoint(a, a2);
    if (by_reach != by_products)
        throw std::logic_error("is_separator: reachability and product routes disagree");
    return by_reach;
}

std::optional<std::vector<bool>> structure_separable(const Dfa& structure, const Dfa& a1,
                                                     const Dfa& a2) {
    std::vector<bool> via1 = reachable_via(structure, a1);
    std::vector<bool> via2 = reachable_via(structure, a2);
    for (State q = 0; q < structure.state_count(); ++q)
        if (via1[q] && via2[q]) return std::nullopt;
    return via1;
}

namespace {

// Strictness witnesses for a candidate separator.
bool properly_contains_left(const Dfa& sep, const Dfa& a1) {
    return !is_empty(difference(sep, a1));  // some word in L(sep) \ L(a1)
}

bool properly_below_right(const Dfa& sep, const Dfa& a2) {
    // some word outside both L(sep) and L(a2)
    return !is_empty(intersect(complement(sep), complement(a2)));
}

bool mode_ok(const Dfa& sep, const SeparationInstance& inst) {
    switch (inst.mode) {
        case SeparationMode::Plain:
            return true;
        case SeparationMode::StrictLeft:
            return properly_contains_left(sep, inst.a1);
        case SeparationMode::StrictRight:
            return properly_below_right(sep, inst.a2);
        case SeparationMode::StrictBoth:
            return properly_contains_left(sep, inst.a1) && properly_below_right(sep, inst.a2);
    }
    return false;
}

// Enumerates complete transition structures with exactly m reachable states
// in ordered-discovery form: slots filled row by row, a target may exceed
// the largest state introduced so far by at most one, and every state must
// be introduced before its own row is reached.
template <typename Fn>
bool enumerate_ordered_structures(const Alphabet& alphabet, int m, Fn&& visit) {
    const int letters = alphabet.size();
    std::vector<State> slots(static_cast<size_t>(m) * letters, 0);
    // DFS over slot assignments with the running max-introduced state.
    std::vector<int> max_before(slots.size() + 1, 0);
    int pos = 0;
    std::vector<int> choice(slots.size(), -1);
    while (pos >= 0) {
        if (pos == static_cast<int>(slots.size())) {
            if (max_before[pos] == m - 1) {
                Dfa d;
                d.alphabet = alphabet;
                d.initial = 0;
                d.accepting.assign(m, false);
                d.delta.assign(m, std::vector<State>(letters, 0));
                for (int i = 0; i < m; ++i)
                    for (Letter x = 0; x < letters; ++x) d.delta[i][x] = slots[i * letters + x];
                if (visit(d)) return true;
            }
            --pos;
            continue;
        }
        int row = pos / letters;
        if (row > max_before[pos]) {  // row's state never introduced: dead branch
            --pos;
            continue;
        }
        int limit = std::min(max_before[pos] + 1, m - 1);
        if (++choice[pos] > limit) {
            choice[pos] = -1;
            --pos;
            continue;
        }
        slots[pos] = choice[pos];
        max_before[pos + 1] = std::max(max_before[pos], choice[pos]);
        ++pos;
    }
    return false;
}

}  // namespace

SeparatorResult find_separator(const SeparationInstance& inst, const ScaleLimits& limits) {
    if (inst.a1.alphabet != inst.a2.alphabet)
        throw InputError("find_separator: alphabet mismatch");
    if (inst.k < 1) throw InputError("find_separator: k must be positive");
    SeparatorResult result;
    if (auto w = shortest_accepted(intersect(inst.a1, inst.a2))) {
        result.status = SeparatorResult::Status::NeverSeparable;
        result.overlap = std::move(w);
        return result;
    }
    const int letters = inst.a1.alphabet.size();
    double estimate = std::pow(static_cast<double>(inst.k),
                               static_cast<double>(inst.k) * letters) *
                      inst.k;
    if (estimate > limits.separator_enum_cap)
        throw ScaleError("find_separator: enumeration budget exceeded (k = " +
                         std::to_string(inst.k) + ", |Sigma| = " + std::to_string(letters) + ")");

    for (int m = 1; m <= inst.k; ++m) {
        bool found = enumerate_ordered_structures(inst.a1.alphabet, m, [&](Dfa structure) {
            auto base = structure_separable(structure, inst.a1, inst.a2);
            if (!base) return false;
            if (inst.mode == SeparationMode::Plain) {
                structure.accepting = *base;
                result.separator = std::move(structure);
                return true;
            }
            // Any accepting set between the two reachability sets separates;
            // strictness may need a different one, so enumerate the free
            // states in ascending bitmask order.
            std::vector<bool> via2 = reachable_via(structure, inst.a2);
            std::vector<State> free_states;
            for (State q = 0; q < m; ++q)
                if (!(*base)[q] && !via2[q]) free_states.push_back(q);
            for (unsigned long long mask = 0; mask < (1ULL << free_states.size()); ++mask) {
                Dfa candidate = structure;
                candidate.accepting = *base;
                for (size_t b = 0; b < free_states.size(); ++b)
                    if (mask & (1ULL << b)) candidate.accepting[free_states[b]] = true;
                if (mode_ok(candidate, inst)) {
                    result.separator = std::move(candidate);
                    return true;
                }
            }
            return false;
        });
        if (found) break;
    }
    if (result.separator) {
        if (!is_separator(*result.separator, inst.a1, inst.a2))
            throw std::logic_error("find_separator: candidate failed re-verification");
        result.status = SeparatorResult::Status::Separable;
    }
    return result;
}

SeparationInstance identification_to_separation(const std::vector<Word>& s1,
                                                const std::vector<Word>& s2,
                                                const Alphabet& alphabet, int k,
                                                SeparationMode mode) {
    for (const Word& w1 : s1)
        for (const Word& w2 : s2)
            if (w1 == w2)
                throw InputError("identification_to_separation: word sets overlap");
    SeparationInstance inst;
    inst.a1 = complete(prefix_tree_dfa(s1, alphabet));
    inst.a2 = complete(prefix_tree_dfa(s2, alphabet));
    inst.k = k;
    inst.mode = mode;
    return inst;
}

std::pair<Dfa, Dfa> separation_to_strict(const Dfa& a1, const Dfa& a2,
                                         const std::string& fresh) {
    for (const Dfa* d : {&a1, &a2}) {
        if (is_empty(*d))
            throw InputError("separation_to_strict: languages must be nonempty");
        if (!is_finite_language(*d))
            throw InputError("separation_to_strict: languages must be finite");
    }
    return {extend_with_reset_to_sink(a1, fresh), extend_with_reset_to_sink(a2, fresh)};
}

// --- separation refuter -------------------------------------------------------

ExposeRefuter::ExposeRefuter(const Dfa& a1, const Dfa& a2, int k)
    : a1_(minimize(a1)), a2_(minimize(a2)), k_(k), letters_(a1.alphabet.size()) {
    if (a1.alphabet != a2.alphabet) throw InputError("expose_refuter: alphabet mismatch");
    if (k_ < 1) throw InputError("expose_refuter: k must be positive");
    delta_.assign(static_cast<size_t>(k_) * letters_, -1);
    seen_.assign(k_, false);
}

void ExposeRefuter::sync(const Transcript& t) {
    if (consumed_ == 0) {
        y1_ = t.y1 - 1;
        cur_ = y1_;
        seen_[y1_] = true;
        order_.push_back(y1_);
        consumed_ = 1;
    }
    for (; consumed_ < t.positions(); ++consumed_) {
        const Round& r = t.rounds[consumed_ - 1];
        int y = r.y - 1;
        if (r.x == kResetLetter) {
            cur_ = y1_;  // a reset deviation is already a reportable win
            continue;
        }
        int& slot = delta_[cur_ * letters_ + r.x];
        if (slot == -1) slot = y;
        if (!seen_[y]) {
            seen_[y] = true;
            order_.push_back(y);
        }
        cur_ = slot;  // on a determinism deviation the match is already over
    }
}

// Shortest word over the discovered table from y1 to `target`, letters in
// alphabet order; empty optional when unreachable.
static std::optional<Word> table_word(const std::vector<int>& delta, int letters, int from,
                                      int target, int k) {
    std::vector<std::pair<int, Letter>> parent(k, {-1, 0});
    std::vector<bool> seen(k, false);
    std::queue<int> work;
    seen[from] = true;
    work.push(from);
    while (!work.empty()) {
        int s = work.front();
        work.pop();
        for (Letter x = 0; x < letters; ++x) {
            int nxt = delta[s * letters + x];
            if (nxt == -1 || seen[nxt]) continue;
            seen[nxt] = true;
            parent[nxt] = {s, x};
            work.push(nxt);
        }
    }
    if (!seen[target]) return std::nullopt;
    Word w;
    for (int at = target; at != from; at = parent[at].first) w.push_back(parent[at].second);
    std::reverse(w.begin(), w.end());
    return w;
}

bool ExposeRefuter::pick_exposure_target() {
    for (int q : order_) {
        for (Letter x = 0; x < letters_; ++x) {
            if (delta_[q * letters_ + x] != -1) continue;
            auto w = table_word(delta_, letters_, y1_, q, k_);
            if (!w) continue;  // cannot happen: discovered states are table-reachable
            for (Letter a : *w) pending_.push_back(a);
            pending_.push_back(x);
            pending_.push_back(kResetLetter);
            return true;
        }
    }
    return false;
}

void ExposeRefuter::plan_clash() {
    // The exposed table is total on the discovered states; view it as a DFA.
    const int m = static_cast<int>(order_.size());
    std::vector<int> compact(k_, -1);
    for (int i = 0; i < m; ++i) compact[order_[i]] = i;
    Dfa exposed;
    exposed.alphabet = a1_.alphabet;
    exposed.initial = compact[y1_];
    exposed.delta.assign(m, std::vector<State>(letters_, 0));
    exposed.accepting.assign(m, false);
    for (int i = 0; i < m; ++i)
        for (Letter x = 0; x < letters_; ++x)
            exposed.delta[i][x] = compact[delta_[order_[i] * letters_ + x]];

    std::vector<bool> via1 = reachable_via(exposed, a1_);
    std::vector<bool> via2 = reachable_via(exposed, a2_);
    int clash_state = -1;
    for (int i = 0; i < m && clash_state < 0; ++i)
        if (via1[i] && via2[i]) clash_state = i;  // i follows discovery order
    if (clash_state < 0)
        throw std::logic_error("expose_refuter: instance is separable by the exposed table");

    // Shortest word of each language that drives the exposed table into the
    // clash state; a breadth-first walk of the pairing keeps it below k*N.
    auto witness = [&](const Dfa& lang) {
        std::vector<std::pair<int, Letter>> parent(
            static_cast<size_t>(m) * lang.state_count(), {-1, 0});
        std::vector<bool> seen(static_cast<size_t>(m) * lang.state_count(), false);
        auto id = [&](int e, State p) { return static_cast<size_t>(e) * lang.state_count() + p; };
        std::queue<std::pair<int, State>> work;
        seen[id(exposed.initial, lang.initial)] = true;
        work.emplace(exposed.initial, lang.initial);
        int hit = -1;
        if (exposed.initial == clash_state && lang.accepting[lang.initial])
            hit = static_cast<int>(id(exposed.initial, lang.initial));
        while (!work.empty() && hit < 0) {
            auto [e, p] = work.front();
            work.pop();
            for (Letter x = 0; x < letters_ && hit < 0; ++x) {
                int ne = exposed.next(e, x);
                State np = lang.next(p, x);
                if (seen[id(ne, np)]) continue;
                seen[id(ne, np)] = true;
                parent[id(ne, np)] = {static_cast<int>(id(e, p)), x};
                if (ne == clash_state && lang.accepting[np]) hit = static_cast<int>(id(ne, np));
                else work.emplace(ne, np);
            }
        }
        if (hit < 0) throw std::logic_error("expose_refuter: clash witness vanished");
        Word w;
        int start = static_cast<int>(id(exposed.initial, lang.initial));
        for (int at = hit; at != start; at = parent[at].first) w.push_back(parent[at].second);
        std::reverse(w.begin(), w.end());
        return w;
    };
    Word w1 = witness(a1_);
    Word w2 = witness(a2_);
    clash_ = {{w1, w2}};
    for (Letter a : w1) pending_.push_back(a);
    pending_.push_back(kResetLetter);
    for (Letter a : w2) pending_.push_back(a);
    pending_.push_back(kResetLetter);
}

GameLetter ExposeRefuter::next(const Transcript& t) {
    sync(t);
    if (pending_.empty()) {
        if (!clash_planned_) {
            if (!pick_exposure_target()) {
                plan_clash();
                clash_planned_ = true;
            }
        }
        if (pending_.empty()) return kStop;
    }
    GameLetter x = pending_.front();
    pending_.pop_front();
    return x;
}

std::unique_ptr<RefuterStrategy> expose_refuter(const Dfa& a1, const Dfa& a2, int k) {
    return std::make_unique<ExposeRefuter>(a1, a2, k);
}

}  // namespace dfacert
