#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dfacert/game.hpp"
#include "dfacert/residual.hpp"
#include "dfacert/scale.hpp"

namespace dfacert {

// Deterministic, stateful players. A strategy instance belongs to a single
// match; identical move histories always produce identical moves.
class ProverStrategy {
public:
    virtual ~ProverStrategy() = default;
    virtual int first_move() = 0;            // y1 in 1..k
    virtual int respond(GameLetter x) = 0;   // response in 1..k
    virtual std::string name() const = 0;
    // Fingerprint of the internal state; equal keys after equal histories
    // mean equal future behaviour. Used by exhaustive searches.
    virtual std::string state_key() const = 0;
    virtual std::unique_ptr<ProverStrategy> clone() const = 0;
};

inline constexpr GameLetter kStop = -2;

class RefuterStrategy {
public:
    virtual ~RefuterStrategy() = default;
    // Next letter given everything played so far, or kStop to resign the
    // probe. Called after every Prover response.
    virtual GameLetter next(const Transcript& t) = 0;
    virtual std::string name() const = 0;
};

// Thrown when a strategy emits an out-of-range move.
struct ProtocolError : std::runtime_error {
    std::string offender;  // "prover" or "refuter"
    ProtocolError(std::string who, const std::string& what)
        : std::runtime_error(who + ": " + what), offender(std::move(who)) {}
};

struct MatchOutcome {
    Transcript transcript;
    std::optional<ViolationWitness> witness;  // set iff the refuter won
    int rounds = 0;                           // Refuter letters played
    bool horizon_hit = false;
    // Round index at which an agreement conflict was committed but not yet
    // reportable (0 if none); useful for harvesting bad prefixes.
    int committed_at = 0;

    bool refuter_won() const { return witness.has_value(); }
};

// Plays prover vs. refuter over the recognition objective for `language`.
// Stops at the first reportable violation, a refuter kStop, or after
// max_rounds Refuter letters.
MatchOutcome run_match(ProverStrategy& prover, RefuterStrategy& refuter, const Dfa& language,
                       int k, int max_rounds);

// Separation flavour: violations judged against the pair (l1, l2).
MatchOutcome run_match_sep(ProverStrategy& prover, RefuterStrategy& refuter, const Dfa& l1,
                           const Dfa& l2, int k, int max_rounds);

// Follows a concrete automaton with at most k states, renaming states to
// 1..k in order of first use (so its transcripts are ordered). '#' returns
// to the automaton's initial state.
std::unique_ptr<ProverStrategy> honest_prover(const Dfa& d, int k);

// Follows the minimal automaton of `language`, assigning game states in
// order of first appearance. When an unseen class appears after all k
// numbers are taken, it is permanently mapped to the lowest-numbered state
// whose acceptance matches the class (lowest-numbered overall if none does).
std::unique_ptr<ProverStrategy> greedy_residual_prover(const Dfa& language, int k);

// Replays a fixed script: y1 = moves[0], then responses in order. Running
// past the script is a logic error.
std::unique_ptr<ProverStrategy> scripted_prover(std::vector<int> moves);

// Emits the given letters, then kStop.
std::unique_ptr<RefuterStrategy> scripted_refuter(GameWord letters);

// Endless exerciser: all words over the alphabet in length-then-lex order,
// each followed by '#'. Never wins against a sound prover; stresses one.
std::unique_ptr<RefuterStrategy> probing_refuter(const Alphabet& alphabet);

// Seeded random letters with occasional resets; deterministic per seed.
std::unique_ptr<RefuterStrategy> random_refuter(const Alphabet& alphabet, unsigned seed,
                                                double reset_probability = 0.2);

// The interactive winning refuter for k < index(language): first maps k+1
// pairwise inequivalent heads, then replays the colliding pair with its
// distinguishing tail. Wins within k(k+1) + 2(k+N) + k + 3 rounds.
std::unique_ptr<RefuterStrategy> online_refuter(const Dfa& language, int k);

// One head-pair of an offline certificate: the two '#'-terminated bursts
// carrying heads i and j with their shared distinguishing tail.
struct PairBlock {
    int i = 0, j = 0;       // head indices, 1-based, i < j
    GameWord first, second; // h_i t '#' and h_j t '#'
};

struct UniversalCertificate {
    GameWord x;                     // concatenation of all blocks
    std::vector<PairBlock> blocks;  // in lexicographic (i, j) order
};

// Offline certificate: a letter sequence x such that every Prover reply is
// violating. Length at most (k+N+1)*k*(k+1). Requires k < index(language).
UniversalCertificate build_universal_certificate(const Dfa& language, int k);
GameWord build_universal_bad_prefix(const Dfa& language, int k);

// Exhaustively checks that every Prover reply to x violates. Guarded: the
// search requires k <= limits.verify_k_max or |x| <= limits.verify_len_max.
bool verify_universal(const GameWord& x, const Dfa& language, int k,
                      const ScaleLimits& limits = default_limits());

// Shortest number of Refuter letters that forces a violation against the
// deterministic prover produced by `make_prover`, or absent when that prover
// never loses. Breadth-first over the prover's responses.
std::optional<int> min_rounds_to_refute(
    const std::function<std::unique_ptr<ProverStrategy>()>& make_prover, const Dfa& language,
    int k, const ScaleLimits& limits = default_limits());

}  // namespace dfacert
