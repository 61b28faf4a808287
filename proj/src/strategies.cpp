#include "dfacert/strategies.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dfacert {

namespace {

void check_state(int y, int k, const char* who) {
    if (y < 1 || y > k) throw ProtocolError(who, "state " + std::to_string(y) + " outside 1.." +
                                                     std::to_string(k));
}

void check_letter(GameLetter x, const Alphabet& alphabet) {
    if (x != kResetLetter && (x < 0 || x >= alphabet.size()))
        throw ProtocolError("refuter", "letter index " + std::to_string(x) + " outside the alphabet");
}

MatchOutcome run_match_impl(ProverStrategy& prover, RefuterStrategy& refuter, int k,
                            int max_rounds, const Alphabet& alphabet,
                            MembershipTracker tracker,
                            const std::function<std::optional<ViolationWitness>(const Transcript&)>&
                                authoritative) {
    if (k < 1) throw InputError("run_match: k must be positive");
    if (max_rounds < 1) throw InputError("run_match: max_rounds must be positive");

    MatchOutcome out;
    out.transcript.k = k;
    out.transcript.alphabet = alphabet;
    out.transcript.y1 = prover.first_move();
    check_state(out.transcript.y1, k, "prover");

    PlayAnalysis analysis(k, alphabet.size(), out.transcript.y1, tracker.current());
    bool committed = false;

    while (true) {
        if (out.rounds >= max_rounds) {
            out.horizon_hit = true;
            break;
        }
        GameLetter x = refuter.next(out.transcript);
        if (x == kStop) break;
        check_letter(x, alphabet);
        int y = prover.respond(x);
        check_state(y, k, "prover");
        out.transcript.rounds.push_back({x, y});
        ++out.rounds;

        if (committed) {
            auto w = authoritative(out.transcript);
            if (!w) throw std::logic_error("match: committed violation failed to materialize");
            out.witness = std::move(w);
            return out;
        }
        StepEvent ev = analysis.step(x, y, tracker);
        if (ev != StepEvent::Ok) {
            if (auto w = authoritative(out.transcript)) {
                out.witness = std::move(w);
                return out;
            }
            // The only invisible event is a conflict committed on the state
            // just answered; it becomes reportable next round.
            if (ev != StepEvent::AgreementConflict)
                throw std::logic_error("match: legality violation not reported");
            committed = true;
            out.committed_at = out.rounds;
        }
    }
    out.witness = authoritative(out.transcript);
    return out;
}

}  // namespace

MatchOutcome run_match(ProverStrategy& prover, RefuterStrategy& refuter, const Dfa& language,
                       int k, int max_rounds) {
    return run_match_impl(prover, refuter, k, max_rounds, language.alphabet,
                          MembershipTracker(language),
                          [&](const Transcript& t) { return find_violation(t, language); });
}

MatchOutcome run_match_sep(ProverStrategy& prover, RefuterStrategy& refuter, const Dfa& l1,
                           const Dfa& l2, int k, int max_rounds) {
    if (l1.alphabet != l2.alphabet) throw InputError("run_match_sep: alphabet mismatch");
    return run_match_impl(prover, refuter, k, max_rounds, l1.alphabet,
                          MembershipTracker(l1, l2),
                          [&](const Transcript& t) { return find_violation_sep(t, l1, l2); });
}

// --- provers ----------------------------------------------------------------

namespace {

// Follows a DFA, handing out game numbers in order of first use.
class DfaFollowerProver : public ProverStrategy {
public:
    DfaFollowerProver(Dfa d, int k, std::string name)
        : dfa_(std::move(d)), k_(k), name_(std::move(name)), numbering_(dfa_.state_count(), 0) {
        if (dfa_.state_count() > k_)
            throw InputError(name_ + ": automaton has more than k states");
    }

    int first_move() override {
        cur_ = dfa_.initial;
        return number_of(cur_);
    }

    int respond(GameLetter x) override {
        if (x != kResetLetter && (x < 0 || x >= dfa_.alphabet.size()))
            throw InputError(name_ + ": game letter outside this follower's alphabet");
        cur_ = (x == kResetLetter) ? dfa_.initial : dfa_.next(cur_, x);
        return number_of(cur_);
    }

    std::string name() const override { return name_; }

    std::string state_key() const override {
        std::ostringstream out;
        out << cur_;
        for (int n : numbering_) out << ',' << n;
        return out.str();
    }

    std::unique_ptr<ProverStrategy> clone() const override {
        return std::make_unique<DfaFollowerProver>(*this);
    }

private:
    int number_of(State s) {
        if (numbering_[s] == 0) numbering_[s] = ++used_;
        return numbering_[s];
    }

    Dfa dfa_;
    int k_;
    std::string name_;
    std::vector<int> numbering_;  // 0 = unassigned, else 1-based game number
    int used_ = 0;
    State cur_ = 0;
};

// Follows the residual automaton, merging classes once the k numbers run
// out: an unnumbered class is pinned to the lowest-numbered state whose
// acceptance matches, or the lowest-numbered state outright.
class GreedyResidualProver : public ProverStrategy {
public:
    GreedyResidualProver(const Dfa& language, int k)
        : view_(residual_view(language)), k_(k),
          numbering_(view_.minimal.state_count(), 0) {
        if (k_ < 1) throw InputError("greedy prover: k must be positive");
    }

    int first_move() override {
        cur_ = view_.minimal.initial;
        return number_of(cur_);
    }

    int respond(GameLetter x) override {
        if (x != kResetLetter && (x < 0 || x >= view_.minimal.alphabet.size()))
            throw InputError("greedy prover: game letter outside the language's alphabet");
        cur_ = (x == kResetLetter) ? view_.minimal.initial : view_.minimal.next(cur_, x);
        return number_of(cur_);
    }

    std::string name() const override { return "greedy-residual"; }

    std::string state_key() const override {
        std::ostringstream out;
        out << cur_;
        for (int n : numbering_) out << ',' << n;
        return out.str();
    }

    std::unique_ptr<ProverStrategy> clone() const override {
        return std::make_unique<GreedyResidualProver>(*this);
    }

private:
    int number_of(State s) {
        if (numbering_[s] != 0) return numbering_[s];
        if (used_ < k_) {
            numbering_[s] = ++used_;
            class_of_number_.push_back(s);
            return numbering_[s];
        }
        // Forced merge: reuse the lowest number with matching acceptance.
        bool want = view_.minimal.accepting[s];
        int chosen = 1;
        for (int n = 1; n <= k_; ++n) {
            if (view_.minimal.accepting[class_of_number_[n - 1]] == want) {
                chosen = n;
                break;
            }
        }
        numbering_[s] = chosen;
        return chosen;
    }

    ResidualView view_;
    int k_;
    std::vector<int> numbering_;
    std::vector<State> class_of_number_;  // number-1 -> first class using it
    int used_ = 0;
    State cur_ = 0;
};

class ScriptedProver : public ProverStrategy {
public:
    explicit ScriptedProver(std::vector<int> moves) : moves_(std::move(moves)) {
        if (moves_.empty()) throw InputError("scripted prover: empty script");
    }

    int first_move() override { return take(); }
    int respond(GameLetter) override { return take(); }
    std::string name() const override { return "scripted"; }
    std::string state_key() const override { return std::to_string(at_); }
    std::unique_ptr<ProverStrategy> clone() const override {
        return std::make_unique<ScriptedProver>(*this);
    }

private:
    int take() {
        if (at_ >= moves_.size()) throw std::logic_error("scripted prover: script exhausted");
        return moves_[at_++];
    }
    std::vector<int> moves_;
    size_t at_ = 0;
};

}  // namespace

std::unique_ptr<ProverStrategy> honest_prover(const Dfa& d, int k) {
    d.validate();
    return std::make_unique<DfaFollowerProver>(d, k, "honest(" + std::to_string(d.state_count()) +
                                                         "-state)");
}

std::unique_ptr<ProverStrategy> greedy_residual_prover(const Dfa& language, int k) {
    return std::make_unique<GreedyResidualProver>(language, k);
}

std::unique_ptr<ProverStrategy> scripted_prover(std::vector<int> moves) {
    return std::make_unique<ScriptedProver>(std::move(moves));
}

// --- refuters ---------------------------------------------------------------

namespace {

class ScriptedRefuter : public RefuterStrategy {
public:
    explicit ScriptedRefuter(GameWord letters) : letters_(std::move(letters)) {}
    GameLetter next(const Transcript&) override {
        return at_ < letters_.size() ? letters_[at_++] : kStop;
    }
    std::string name() const override { return "scripted"; }

private:
    GameWord letters_;
    size_t at_ = 0;
};

class ProbingRefuter : public RefuterStrategy {
public:
    explicit ProbingRefuter(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    GameLetter next(const Transcript&) override {
        if (pending_.empty()) {
            for (Letter a : word_) pending_.push_back(a);
            pending_.push_back(kResetLetter);
            bump();
        }
        GameLetter x = pending_.front();
        pending_.pop_front();
        return x;
    }

    std::string name() const override { return "probing"; }

private:
    void bump() {  // next word in length-then-lex order
        for (int i = static_cast<int>(word_.size()) - 1; i >= 0; --i) {
            if (word_[i] + 1 < alphabet_.size()) {
                ++word_[i];
                return;
            }
            word_[i] = 0;
        }
        word_.assign(word_.size() + 1, 0);
    }

    Alphabet alphabet_;
    Word word_;  // next word to emit
    std::deque<GameLetter> pending_;
};

class RandomRefuter : public RefuterStrategy {
public:
    RandomRefuter(Alphabet alphabet, unsigned seed, double reset_probability)
        : alphabet_(std::move(alphabet)), rng_(seed), reset_(reset_probability) {}

    GameLetter next(const Transcript&) override {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        if (coin(rng_) < reset_) return kResetLetter;
        std::uniform_int_distribution<int> pick(0, alphabet_.size() - 1);
        return pick(rng_);
    }

    std::string name() const override { return "random"; }

private:
    Alphabet alphabet_;
    std::mt19937 rng_;
    double reset_;
};

class OnlineRefuter : public RefuterStrategy {
public:
    OnlineRefuter(const Dfa& language, int k) : view_(residual_view(language)), k_(k) {
        if (k_ < 1) throw InputError("online refuter: k must be positive");
        if (k_ >= view_.index())
            throw InputError("online refuter: k >= index, nothing to refute");
        heads_ = representatives_bounded(view_, k_ + 1);
        // Phase 1: h_1 '#' h_2 '#' ... h_{k+1} '#'. Remember the position
        // whose state is the mapping of each head.
        int emitted = 0;
        for (int i = 0; i < k_ + 1; ++i) {
            head_position_.push_back(emitted + static_cast<int>(heads_[i].size()) + 1);
            for (Letter a : heads_[i]) pending_.push_back(a);
            pending_.push_back(kResetLetter);
            emitted += static_cast<int>(heads_[i].size()) + 1;
        }
    }

    GameLetter next(const Transcript& t) override {
        if (!pending_.empty()) {
            GameLetter x = pending_.front();
            pending_.pop_front();
            return x;
        }
        if (phase2_done_) return kStop;
        // Phase 1 answered: find the colliding pair, smallest (i, j) first.
        int ci = -1, cj = -1;
        for (int i = 0; ci < 0 && i < k_ + 1; ++i)
            for (int j = i + 1; j < k_ + 1; ++j)
                if (t.state_at(head_position_[i]) == t.state_at(head_position_[j])) {
                    ci = i;
                    cj = j;
                    break;
                }
        if (ci < 0) return kStop;  // impossible for in-range responses
        Word tail = distinguishing_tail(view_, view_.class_of(heads_[ci]),
                                        view_.class_of(heads_[cj]));
        for (Letter a : heads_[ci]) pending_.push_back(a);
        for (Letter a : tail) pending_.push_back(a);
        pending_.push_back(kResetLetter);
        for (Letter a : heads_[cj]) pending_.push_back(a);
        for (Letter a : tail) pending_.push_back(a);
        pending_.push_back(kResetLetter);
        phase2_done_ = true;
        GameLetter x = pending_.front();
        pending_.pop_front();
        return x;
    }

    std::string name() const override { return "online"; }

private:
    ResidualView view_;
    int k_;
    std::vector<Word> heads_;
    std::vector<int> head_position_;  // position whose state maps head i
    std::deque<GameLetter> pending_;
    bool phase2_done_ = false;
};

}  // namespace

std::unique_ptr<RefuterStrategy> scripted_refuter(GameWord letters) {
    return std::make_unique<ScriptedRefuter>(std::move(letters));
}

std::unique_ptr<RefuterStrategy> probing_refuter(const Alphabet& alphabet) {
    return std::make_unique<ProbingRefuter>(alphabet);
}

std::unique_ptr<RefuterStrategy> random_refuter(const Alphabet& alphabet, unsigned seed,
                                                double reset_probability) {
    return std::make_unique<RandomRefuter>(alphabet, seed, reset_probability);
}

std::unique_ptr<RefuterStrategy> online_refuter(const Dfa& language, int k) {
    return std::make_unique<OnlineRefuter>(language, k);
}

// --- offline certificates ---------------------------------------------------

UniversalCertificate build_universal_certificate(const Dfa& language, int k) {
    if (k < 1) throw InputError("universal certificate: k must be positive");
    ResidualView view = residual_view(language);
    const int n = view.index();
    if (k >= n) throw InputError("universal certificate: k >= index, nothing to refute");
    std::vector<Word> heads = representatives_bounded(view, k + 1);

    UniversalCertificate cert;
    for (int i = 0; i < k + 1; ++i) {
        for (int j = i + 1; j < k + 1; ++j) {
            Word tail =
                distinguishing_tail(view, view.class_of(heads[i]), view.class_of(heads[j]));
            PairBlock block;
            block.i = i + 1;
            block.j = j + 1;
            for (Letter a : heads[i]) block.first.push_back(a);
            for (Letter a : tail) block.first.push_back(a);
            block.first.push_back(kResetLetter);
            for (Letter a : heads[j]) block.second.push_back(a);
            for (Letter a : tail) block.second.push_back(a);
            block.second.push_back(kResetLetter);
            cert.x.insert(cert.x.end(), block.first.begin(), block.first.end());
            cert.x.insert(cert.x.end(), block.second.begin(), block.second.end());
            cert.blocks.push_back(std::move(block));
        }
    }
    assert(static_cast<long long>(cert.x.size()) <=
           static_cast<long long>(k + n + 1) * k * (k + 1));
    return cert;
}

GameWord build_universal_bad_prefix(const Dfa& language, int k) {
    return build_universal_certificate(language, k).x;
}

bool verify_universal(const GameWord& x, const Dfa& language, int k, const ScaleLimits& limits) {
    if (k < 1) throw InputError("verify_universal: k must be positive");
    if (k > limits.verify_k_max && static_cast<int>(x.size()) > limits.verify_len_max)
        throw ScaleError("verify_universal: instance too large (k = " + std::to_string(k) +
                         ", |x| = " + std::to_string(x.size()) + ")");
    for (GameLetter a : x)
        if (a != kResetLetter && (a < 0 || a >= language.alphabet.size()))
            throw InputError("verify_universal: letter outside the alphabet");
    if (x.empty()) return false;  // no reply is constrained by nothing

    // Depth-first search over Prover replies to x_1 .. x_{|x|-1}: a reply
    // sequence survives iff it completes without any committed violation.
    // States are collapsed up to renaming, so fresh states need only one
    // representative. Memoised on (position, analysis, membership run).
    std::unordered_map<std::string, bool> memo;
    std::function<bool(const PlayAnalysis&, const MembershipTracker&, size_t)> survives =
        [&](const PlayAnalysis& analysis, const MembershipTracker& tracker,
            size_t pos) -> bool {
        if (pos + 1 >= x.size()) return true;  // all constrained replies made
        std::string key = analysis.key();
        key += '|';
        key += std::to_string(tracker.run_states().first);
        key += '@';
        key += std::to_string(pos);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        if (static_cast<long long>(memo.size()) > limits.verify_memo_cap)
            throw ScaleError("verify_universal: memo budget exceeded");

        GameLetter letter = x[pos];
        bool result = false;
        int options = (letter == kResetLetter) ? 1 : std::min(analysis.discovered() + 1, k);
        for (int choice = 1; choice <= options && !result; ++choice) {
            int reply = (letter == kResetLetter) ? analysis.y1 + 1 : choice;
            PlayAnalysis next_analysis = analysis;
            MembershipTracker next_tracker = tracker;
            if (next_analysis.step(letter, reply, next_tracker) == StepEvent::Ok)
                result = survives(next_analysis, next_tracker, pos + 1);
        }
        memo.emplace(std::move(key), result);
        return result;
    };

    MembershipTracker tracker(language);
    PlayAnalysis analysis(k, language.alphabet.size(), 1, tracker.current());
    return !survives(analysis, tracker, 0);
}

// --- shortest refutation against a fixed prover ------------------------------

std::optional<int> min_rounds_to_refute(
    const std::function<std::unique_ptr<ProverStrategy>()>& make_prover, const Dfa& language,
    int k, const ScaleLimits& limits) {
    struct Node {
        std::unique_ptr<ProverStrategy> prover;
        PlayAnalysis analysis;
        MembershipTracker tracker;
        int depth;
    };
    std::deque<Node> queue;
    std::unordered_set<std::string> visited;
    long long expanded = 0;

    {
        auto prover = make_prover();
        int y1 = prover->first_move();
        check_state(y1, k, "prover");
        MembershipTracker tracker(language);
        PlayAnalysis analysis(k, language.alphabet.size(), y1, tracker.current());
        visited.insert(prover->state_key() + "|" + analysis.key());
        queue.push_back({std::move(prover), std::move(analysis), std::move(tracker), 0});
    }

    std::optional<int> best;
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        if (best && node.depth + 1 >= *best) break;  // BFS: no shorter win left
        for (GameLetter x = kResetLetter; x < language.alphabet.size(); ++x) {
            auto prover = node.prover->clone();
            int y = prover->respond(x);
            check_state(y, k, "prover");
            PlayAnalysis analysis = node.analysis;
            MembershipTracker tracker = node.tracker;
            StepEvent ev = analysis.step(x, y, tracker);
            if (ev == StepEvent::ResetViolation || ev == StepEvent::DeterminismViolation) {
                int rounds = node.depth + 1;  // reportable immediately
                if (!best || rounds < *best) best = rounds;
                continue;
            }
            if (ev == StepEvent::AgreementConflict) {
                int rounds = node.depth + 2;  // one more letter to report it
                if (!best || rounds < *best) best = rounds;
                continue;
            }
            std::string key = prover->state_key() + "|" + analysis.key() + "|" +
                              std::to_string(tracker.run_states().first);
            if (!visited.insert(std::move(key)).second) continue;
            if (++expanded > limits.search_node_cap)
                throw ScaleError("min_rounds_to_refute: node budget exceeded");
            queue.push_back({std::move(prover), std::move(analysis), std::move(tracker),
                             node.depth + 1});
        }
    }
    return best;
}

}  // namespace dfacert
