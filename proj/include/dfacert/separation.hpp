#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dfacert/strategies.hpp"

namespace dfacert {

// Separation goals. A separator L satisfies L(a1) subseteq L and
// L cap L(a2) = empty; the strict variants make the stated inclusions
// proper (StrictBoth both of L(a1) subset L and L subset comp(L(a2))).
enum class SeparationMode { Plain, StrictBoth, StrictLeft, StrictRight };

struct SeparationInstance {
    Dfa a1;
    Dfa a2;
    int k = 1;
    SeparationMode mode = SeparationMode::Plain;
};

// States of `a` reachable by reading some word of L(aprime).
std::vector<bool> reachable_via(const Dfa& a, const Dfa& aprime);

// Separator check through reachable-state containment, cross-checked
// against direct product-emptiness tests.
bool is_separator(const Dfa& a, const Dfa& a1, const Dfa& a2);

// Given a transition structure (acceptance ignored), the accepting set that
// makes it separate (a1, a2), when one exists: the states reachable via
// L(a1), provided they avoid the states reachable via L(a2).
std::optional<std::vector<bool>> structure_separable(const Dfa& structure, const Dfa& a1,
                                                     const Dfa& a2);

struct SeparatorResult {
    enum class Status { Separable, NotSeparable, NeverSeparable };
    Status status = Status::NotSeparable;
    std::optional<Dfa> separator;       // set iff Separable
    std::optional<Word> overlap;        // witness word when NeverSeparable
};

// Exhaustive search over transition structures with up to k reachable
// states, enumerated in canonical (ordered-discovery) form, then over
// admissible accepting sets. Returns the first separator in that order.
// Instances with overlapping languages are reported NeverSeparable.
SeparatorResult find_separator(const SeparationInstance& inst,
                               const ScaleLimits& limits = default_limits());

// DFA identification as separation: word sets become prefix-tree acceptors.
SeparationInstance identification_to_separation(const std::vector<Word>& s1,
                                                const std::vector<Word>& s2,
                                                const Alphabet& alphabet, int k,
                                                SeparationMode mode = SeparationMode::Plain);

// The strictness reduction: extends both automata with a fresh letter
// leading to a rejecting sink. Requires both languages nonempty and finite.
std::pair<Dfa, Dfa> separation_to_strict(const Dfa& a1, const Dfa& a2,
                                         const std::string& fresh);

// Winning refuter for an instance that is not k-separable: first forces the
// opponent to pin down a complete transition table (shortest known word to
// each unfinished state, letters in alphabet order), then replays two words
// from L(a1) and L(a2) that meet in one state. Certificates arrive within
// k(k+1)|Sigma| + k*N1 + k*N2 + 2 rounds, with both replayed words of
// length at most k*N1 and k*N2.
class ExposeRefuter : public RefuterStrategy {
public:
    ExposeRefuter(const Dfa& a1, const Dfa& a2, int k);
    GameLetter next(const Transcript& t) override;
    std::string name() const override { return "expose"; }
    // The two phase-2 words, once chosen.
    const std::optional<std::pair<Word, Word>>& clash_words() const { return clash_; }

private:
    void sync(const Transcript& t);
    bool pick_exposure_target();
    void plan_clash();

    Dfa a1_, a2_;
    int k_;
    int letters_;
    std::vector<int> delta_;          // k*letters over claimed states, -1 unknown
    std::vector<int> order_;          // discovered claimed states, 0-based, first = y1
    std::vector<bool> seen_;
    int consumed_ = 0;
    int y1_ = -1;
    int cur_ = -1;
    std::deque<GameLetter> pending_;
    bool clash_planned_ = false;
    std::optional<std::pair<Word, Word>> clash_;
};

std::unique_ptr<RefuterStrategy> expose_refuter(const Dfa& a1, const Dfa& a2, int k);

}  // namespace dfacert
