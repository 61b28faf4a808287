#include "dfacert/solver.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <climits>
#include <functional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace dfacert {

namespace {

constexpr int kInf = INT_MAX / 2;

int width_for(int max_value) {
    return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(max_value))));
}

// A knowledge state with Refuter to move: everything Prover has pinned down,
// plus the run of the reference language over the current segment. States
// are canonical: the first claimed state is 0 and fresh states appear in
// numeric order.
struct SState {
    std::vector<signed char> delta;  // k*letters, -1 undefined
    std::vector<signed char> label;  // -1 unknown, 0 reject, 1 accept
    signed char cur = 0;
    signed char m = 0;  // language state of the current segment
};

struct Ctx {
    Dfa lang;
    int k = 1;
    int letters = 1;
    int wd = 1, wc = 1, wm = 1;  // bit widths: delta slot, cur, m

    int reset_sigma() const { return letters; }

    unsigned long long pack(const SState& s) const {
        unsigned long long key = 0;
        for (signed char d : s.delta) key = (key << wd) | static_cast<unsigned>(d + 1);
        for (signed char l : s.label) key = (key << 2) | static_cast<unsigned>(l + 1);
        key = (key << wc) | static_cast<unsigned>(s.cur);
        key = (key << wm) | static_cast<unsigned>(s.m);
        return key;
    }
};

enum class Move { Safe, Commit, Determinism, Reset };

// Applies one (letter, reply) exchange to a knowledge state. Terminal moves
// leave the state partially updated; callers treat them as game over.
Move step_state(const Ctx& ctx, SState& s, int sigma, int reply) {
    if (sigma == ctx.reset_sigma()) {
        if (reply != 0) return Move::Reset;
        s.cur = 0;
        s.m = static_cast<signed char>(ctx.lang.initial);
        return Move::Safe;  // label[0] always matches the empty segment
    }
    signed char& slot = s.delta[s.cur * ctx.letters + sigma];
    if (slot != -1 && slot != reply) return Move::Determinism;
    slot = static_cast<signed char>(reply);
    s.m = static_cast<signed char>(ctx.lang.next(s.m, sigma));
    s.cur = static_cast<signed char>(reply);
    signed char mu = ctx.lang.accepting[s.m] ? 1 : 0;
    if (s.label[reply] == -1) {
        s.label[reply] = mu;
        return Move::Safe;
    }
    return s.label[reply] == mu ? Move::Safe : Move::Commit;
}

int discovered(const SState& s) {
    int n = 0;
    for (signed char l : s.label)
        if (l != -1) ++n;
    return n;
}

// All Prover options for one Refuter letter, collapsed up to renaming.
struct Expansion {
    int terminal_max = -1;                      // worst terminal cost, -1 if none
    std::vector<std::pair<int, SState>> safe;   // (reply, successor)
    int commit_reply = -1;                      // a committing reply, if any
};

Expansion expand(const Ctx& ctx, const SState& s, int sigma) {
    Expansion e;
    auto offer = [&](int reply) {
        SState next = s;
        switch (step_state(ctx, next, sigma, reply)) {
            case Move::Safe:
                e.safe.emplace_back(reply, std::move(next));
                break;
            case Move::Commit:
                e.terminal_max = std::max(e.terminal_max, 1);
                if (e.commit_reply < 0) e.commit_reply = reply;
                break;
            case Move::Determinism:
            case Move::Reset:
                e.terminal_max = std::max(e.terminal_max, 0);
                break;
        }
    };
    if (sigma == ctx.reset_sigma()) {
        offer(0);
        if (ctx.k > 1) e.terminal_max = std::max(e.terminal_max, 0);  // reset suicides
        return e;
    }
    int t = s.delta[s.cur * ctx.letters + sigma];
    if (t != -1) {
        offer(t);
        if (ctx.k > 1) e.terminal_max = std::max(e.terminal_max, 0);  // deviations
        return e;
    }
    int replies = std::min(discovered(s) + 1, ctx.k);
    for (int r = 0; r < replies; ++r) offer(r);
    return e;
}

}  // namespace

struct GameSolution::Core {
    Ctx ctx;
    SState initial;
    // key -> (refuter-winning, worst-case rounds from here)
    std::unordered_map<unsigned long long, std::pair<bool, int>> info;

    std::pair<bool, int> lookup(const SState& s) const {
        auto it = info.find(ctx.pack(s));
        if (it == info.end())
            throw std::logic_error("solver: position missing from the solved graph");
        return it->second;
    }
};

GameSolution solve_game(const Dfa& language, int k, const ScaleLimits& limits) {
    language.validate();
    if (k < 1) throw InputError("solve_game: k must be positive");

    Ctx ctx;
    ctx.lang = minimize(language);
    ctx.k = k;
    ctx.letters = ctx.lang.alphabet.size();
    ctx.wd = width_for(k);  // slot values 0..k after the +1 shift
    ctx.wc = width_for(std::max(1, k - 1));
    ctx.wm = width_for(std::max(1, ctx.lang.state_count() - 1));
    long long bits = static_cast<long long>(ctx.k) * ctx.letters * ctx.wd + 2LL * ctx.k +
                     ctx.wc + ctx.wm;
    if (bits > 64)
        throw ScaleError("solve_game: knowledge key needs " + std::to_string(bits) +
                         " bits; instance too large (k = " + std::to_string(k) + ", |Sigma| = " +
                         std::to_string(ctx.letters) + ")");

    SState initial;
    initial.delta.assign(static_cast<size_t>(k) * ctx.letters, -1);
    initial.label.assign(k, -1);
    initial.cur = 0;
    initial.m = static_cast<signed char>(ctx.lang.initial);
    initial.label[0] = ctx.lang.accepting[ctx.lang.initial] ? 1 : 0;

    // Forward exploration of the reachable graph.
    struct Group {
        int owner = 0;
        int terminal_max = -1;
        int pending = 0;   // successors not yet refuter-won
        int run_max = 0;   // max finalized successor distance
        int succ_count = 0;
    };
    std::vector<unsigned long long> keys;
    std::vector<SState> states;
    std::unordered_map<unsigned long long, int> index;
    std::vector<Group> groups;
    std::vector<std::vector<int>> node_groups;          // node -> its group ids
    std::vector<std::vector<int>> succ_groups;          // node -> groups it feeds
    std::queue<int> work;

    auto intern = [&](const SState& s) {
        unsigned long long key = ctx.pack(s);
        auto [it, inserted] = index.emplace(key, static_cast<int>(states.size()));
        if (inserted) {
            if (static_cast<long long>(states.size()) >= limits.solver_node_cap)
                throw ScaleError("solve_game: node budget exceeded");
            keys.push_back(key);
            states.push_back(s);
            node_groups.emplace_back();
            succ_groups.emplace_back();
            work.push(it->second);
        }
        return it->second;
    };

    intern(initial);
    while (!work.empty()) {
        int v = work.front();
        work.pop();
        SState s = states[v];
        for (int sigma = 0; sigma <= ctx.letters; ++sigma) {
            Expansion e = expand(ctx, s, sigma);
            Group g;
            g.owner = v;
            g.terminal_max = e.terminal_max;
            g.succ_count = static_cast<int>(e.safe.size());
            g.pending = g.succ_count;
            int gid = static_cast<int>(groups.size());
            groups.push_back(g);
            node_groups[v].push_back(gid);
            for (auto& [reply, succ] : e.safe) {
                int u = intern(succ);
                succ_groups[u].push_back(gid);
            }
        }
    }

    const int n = static_cast<int>(states.size());
    std::vector<bool> won(n, false);

    // Backward attractor: a group is complete when every safe successor is
    // refuter-won; a node is won when some group of it is complete.
    {
        std::queue<int> newly;
        for (int gid = 0; gid < static_cast<int>(groups.size()); ++gid) {
            if (groups[gid].pending == 0 && !won[groups[gid].owner]) {
                won[groups[gid].owner] = true;
                newly.push(groups[gid].owner);
            }
        }
        while (!newly.empty()) {
            int u = newly.front();
            newly.pop();
            for (int gid : succ_groups[u]) {
                Group& g = groups[gid];
                if (--g.pending == 0 && !won[g.owner]) {
                    won[g.owner] = true;
                    newly.push(g.owner);
                }
            }
        }
        // pending counters are consumed; rebuild them for the distance pass
        for (Group& g : groups) g.pending = 0;
        for (int u = 0; u < n; ++u)
            for (int gid : succ_groups[u]) ++groups[gid].pending;
    }

    // Worst-case round counts on the refuter-won region: a complete group is
    // worth max(terminal cost, successor distances); a node is worth
    // 1 + min over complete groups.
    std::vector<int> dist(n, kInf);
    {
        using Entry = std::pair<int, int>;  // (candidate distance, node)
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
        for (const Group& g : groups)
            if (g.succ_count == 0 && won[g.owner])
                pq.emplace(1 + std::max(g.terminal_max, 0), g.owner);
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (dist[v] != kInf) continue;
            dist[v] = d;
            for (int gid : succ_groups[v]) {
                Group& g = groups[gid];
                g.run_max = std::max(g.run_max, d);
                if (--g.pending == 0 && won[g.owner])
                    pq.emplace(1 + std::max(g.terminal_max, g.run_max), g.owner);
            }
        }
    }

    auto core = std::make_shared<GameSolution::Core>();
    core->ctx = std::move(ctx);
    core->initial = initial;
    core->info.reserve(n);
    for (int v = 0; v < n; ++v) core->info.emplace(keys[v], std::make_pair(bool(won[v]), dist[v]));

    GameSolution solution;
    solution.prover_wins_ = !won[0];
    solution.nodes_ = n;
    solution.opening_distance_ = won[0] ? dist[0] : 0;
    solution.core_ = std::move(core);
    return solution;
}

namespace {

// Plays the solved policy for Prover: escape the refuter-won region when
// possible, otherwise survive as long as possible.
class SolvedProver : public ProverStrategy {
public:
    explicit SolvedProver(std::shared_ptr<const GameSolution::Core> core)
        : core_(std::move(core)), state_(core_->initial) {}

    int first_move() override { return 1; }

    int respond(GameLetter x) override {
        const Ctx& ctx = core_->ctx;
        int sigma = (x == kResetLetter) ? ctx.reset_sigma() : x;
        if (dead_) return after_loss(sigma);
        Expansion e = expand(ctx, state_, sigma);
        const std::pair<int, SState>* best = nullptr;
        int best_score = -1;
        for (const auto& option : e.safe) {
            auto [lost, d] = core_->lookup(option.second);
            int score = lost ? d : kInf;  // escaping beats any finite survival
            if (score > best_score) {
                best_score = score;
                best = &option;
            }
        }
        if (best) {
            state_ = best->second;
            return best->first + 1;
        }
        dead_ = true;
        if (e.commit_reply >= 0) {  // longest option left: commit, not deviate
            step_state(ctx, state_, sigma, e.commit_reply);
            return e.commit_reply + 1;
        }
        return after_loss(sigma);
    }

    std::string name() const override { return "solver"; }
    std::string state_key() const override {
        return std::to_string(core_->ctx.pack(state_)) + (dead_ ? "!" : "");
    }
    std::unique_ptr<ProverStrategy> clone() const override {
        return std::make_unique<SolvedProver>(*this);
    }

private:
    int after_loss(int sigma) {
        // The game is already decided; stay in range and follow what the
        // transition table forces where it is defined.
        const Ctx& ctx = core_->ctx;
        if (sigma == ctx.reset_sigma()) {
            state_.cur = 0;
            state_.m = static_cast<signed char>(ctx.lang.initial);
            return 1;
        }
        signed char& slot = state_.delta[state_.cur * ctx.letters + sigma];
        if (slot == -1) slot = state_.cur;
        state_.m = static_cast<signed char>(ctx.lang.next(state_.m, sigma));
        state_.cur = slot;
        return state_.cur + 1;
    }

    std::shared_ptr<const GameSolution::Core> core_;
    SState state_;
    bool dead_ = false;
};

// Plays the solved policy for Refuter, translating the opponent's state
// names into canonical ones by order of first appearance.
class SolvedRefuter : public RefuterStrategy {
public:
    explicit SolvedRefuter(std::shared_ptr<const GameSolution::Core> core)
        : core_(std::move(core)), state_(core_->initial),
          rename_(core_->ctx.k + 1, -1) {}

    GameLetter next(const Transcript& t) override {
        const Ctx& ctx = core_->ctx;
        if (consumed_ == 0) {
            canon(t.y1);  // pins the opponent's first state to 0
            consumed_ = 1;
        }
        for (; consumed_ < t.positions(); ++consumed_) {
            const Round& r = t.rounds[consumed_ - 1];
            int sigma = (r.x == kResetLetter) ? ctx.reset_sigma() : r.x;
            if (finished_) continue;
            switch (step_state(ctx, state_, sigma, canon(r.y))) {
                case Move::Safe:
                    break;
                case Move::Commit:
                    committed_ = true;
                    finished_ = true;
                    break;
                case Move::Determinism:
                case Move::Reset:
                    finished_ = true;  // reportable already
                    break;
            }
        }
        if (finished_) {
            if (committed_ && !materialized_) {
                materialized_ = true;
                return kResetLetter;
            }
            return kStop;
        }
        // Choose the letter whose complete option group finishes soonest.
        int best_sigma = -1, best_value = kInf + 1;
        for (int sigma = 0; sigma <= ctx.letters; ++sigma) {
            Expansion e = expand(ctx, state_, sigma);
            int value = e.terminal_max;
            bool complete = true;
            for (const auto& option : e.safe) {
                auto [lost, d] = core_->lookup(option.second);
                if (!lost) {
                    complete = false;
                    break;
                }
                value = std::max(value, d);
            }
            if (!complete) continue;
            if (value < best_value) {
                best_value = value;
                best_sigma = sigma;
            }
        }
        if (best_sigma < 0)
            throw std::logic_error("solver refuter asked to move from a losing position");
        return best_sigma == ctx.reset_sigma() ? kResetLetter : best_sigma;
    }

    std::string name() const override { return "solver"; }

private:
    int canon(int actual) {
        if (actual < 1 || actual > core_->ctx.k)
            throw ProtocolError("prover", "state outside 1..k");
        if (rename_[actual] == -1) rename_[actual] = next_free_++;
        return rename_[actual];
    }

    std::shared_ptr<const GameSolution::Core> core_;
    SState state_;
    std::vector<int> rename_;
    int next_free_ = 0;
    int consumed_ = 0;
    bool finished_ = false;
    bool committed_ = false;
    bool materialized_ = false;
};

}  // namespace

std::unique_ptr<ProverStrategy> GameSolution::make_prover() const {
    return std::make_unique<SolvedProver>(core_);
}

std::unique_ptr<RefuterStrategy> GameSolution::make_refuter() const {
    if (prover_wins_)
        throw InputError("make_refuter: Prover wins this game, no refuter exists");
    return std::make_unique<SolvedRefuter>(core_);
}

}  // namespace dfacert
