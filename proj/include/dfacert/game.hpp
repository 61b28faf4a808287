#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dfacert/automata.hpp"

namespace dfacert {

// The reset letter '#': Refuter's way to start a fresh run. Game letters are
// alphabet indices, with this sentinel for '#'.
inline constexpr int kResetLetter = -1;
using GameLetter = int;
using GameWord = std::vector<GameLetter>;

std::string format_game_letter(const Alphabet& alphabet, GameLetter x);
std::string format_game_word(const Alphabet& alphabet, const GameWord& x);

// One completed exchange: Refuter's letter x answered by Prover's state y.
struct Round {
    GameLetter x;  // letter of Sigma, or kResetLetter
    int y;         // Prover's response, 1-based state in 1..k
};

// The merged game word. Prover moves first: `y1` precedes all Refuter
// letters, and round j pairs Refuter's j-th letter with Prover's response
// y_{j+1}. A transcript with R rounds has R+1 positions; position j carries
// the state y_j and the segment read since the last reset up to letter j-1.
struct Transcript {
    int k = 1;
    Alphabet alphabet;
    int y1 = 1;
    std::vector<Round> rounds;

    int size() const { return static_cast<int>(rounds.size()); }
    int positions() const { return size() + 1; }
    // y_j for 1 <= j <= size()+1.
    int state_at(int j) const;
    // x_j for 1 <= j <= size().
    GameLetter letter_at(int j) const;

    void validate() const;  // throws InputError on out-of-range states/letters
};

// The analysis of one position: the last reset before it, the segment word
// it closes over, and the state Prover mapped that segment to.
struct SegmentView {
    int position = 1;      // j
    int reset_anchor = 0;  // #(j): last j' < j with x_{j'} = '#', or 0
    Word word;             // w^j = x_{#(j)+1} ... x_{j-1}
    int mapped_state = 1;  // y_j
};

// Valid for 1 <= j <= size()+1; throws std::out_of_range otherwise.
SegmentView segment(const Transcript& t, int j);

// Why a transcript is not a correct annotation. Reset: x_{j1} = '#' but
// y_{j1+1} != y1. Determinism: rounds j1 < j2 leave the same state on the
// same letter but disagree on the successor. Agreement: two segments map to
// the same state yet must be classified differently (for recognition,
// segment1 in L and segment2 not; for separation, segment1 in L1 and
// segment2 in L2).
struct ViolationWitness {
    enum class Kind { Reset, Determinism, Agreement };
    Kind kind = Kind::Reset;
    int j1 = 0;
    int j2 = 0;
    Word segment1, segment2;  // agreement only
    bool member1 = false;     // segment1's membership in the (first) language
    bool member2 = false;     // segment2's membership in L (recognition) or L2

    std::string describe(const Alphabet& alphabet) const;
};

// Legality only (reset + determinism clauses); absent iff some total
// transition function and single initial state explain all responses.
// Violations are reported in game order: earliest detectable first.
std::optional<ViolationWitness> check_legal(const Transcript& t);

// The partial transition function a legal transcript pins down, as a partial
// DFA over Sigma with states 1..k (stored 0-based) and initial y1.
PartialDfa induced_partial_dfa(const Transcript& t);

// Per-state classification forced by the completed segments: for each game
// state, +1 if some segment in L maps to it, 0 if some segment outside L
// does, -1 if unconstrained. A conflicting state shows the label of the
// earliest segment; conflicts themselves are reported by find_violation.
std::vector<signed char> segment_labels(const Transcript& t, const Dfa& language);

// Earliest witness that the transcript violates legality or agreement with
// L, or absent if Prover has not (yet) been caught. Agreement is judged on
// completed pairs only: the state answered last has its segment committed
// but becomes reportable one round later.
std::optional<ViolationWitness> find_violation(const Transcript& t, const Dfa& language);

// Separation flavour: agreement requires a classification accepting every
// L1-segment and rejecting every L2-segment.
std::optional<ViolationWitness> find_violation_sep(const Transcript& t, const Dfa& l1,
                                                   const Dfa& l2);

// True iff every one-letter extension of t carries a violation: Prover is
// already doomed even when t itself shows no explicit violation.
bool is_bad_prefix(const Transcript& t, const Dfa& language);

// Ordered transcripts reveal states in numeric order: y1 = 1 and each state
// is at most one above the maximum seen so far.
bool is_ordered(const Transcript& t);

// ---------------------------------------------------------------------------
// Incremental play analysis. This is the running view a match keeps while
// letters arrive: the induced transitions, the forced state labels, the
// current claimed state, and the membership run of the current segment.
// An agreement conflict is "committed" the moment the offending response is
// played; it becomes visible to find_violation one completed round later.
// ---------------------------------------------------------------------------

enum class StepEvent { Ok, ResetViolation, DeterminismViolation, AgreementConflict };

// Segment classification: which side of the constraint a finished segment
// falls on. Recognition uses Positive/Negative; separation adds Free
// (neither language) and Both (overlapping languages, an instant conflict).
enum class SegmentClass { Positive, Negative, Free, Both };

class MembershipTracker {
public:
    // Recognition: classify against a single language (Negative = outside).
    explicit MembershipTracker(const Dfa& language);
    // Separation: Positive = in L1, Negative = in L2, Free = neither.
    MembershipTracker(const Dfa& l1, const Dfa& l2);

    void reset();
    void advance(Letter a);
    SegmentClass current() const;
    // Underlying run states, for memoization keys.
    std::pair<State, State> run_states() const { return {s1_, s2_}; }

private:
    const Dfa* l1_;
    const Dfa* l2_;  // null for recognition
    State s1_ = 0, s2_ = 0;
    bool recognition_ = true;
};

struct PlayAnalysis {
    int k = 1;
    int letters = 0;  // |Sigma|
    int y1 = 0;       // 0-based
    int cur = 0;      // 0-based current claimed state
    std::vector<int> delta;          // k*letters, -1 undefined, else 0-based target
    std::vector<signed char> label;  // per state: -1 unknown, 0 negative, 1 positive

    PlayAnalysis(int k, int letters, int y1_one_based, SegmentClass initial_class);

    int& delta_at(int state, Letter a) { return delta[state * letters + a]; }
    int delta_at(int state, Letter a) const { return delta[state * letters + a]; }
    int discovered() const;  // number of labelled states (first-appearance prefix)

    // Feed one completed round. `tracker` must be advanced by this call's
    // letter handling, so pass the same tracker every time.
    StepEvent step(GameLetter x, int y_one_based, MembershipTracker& tracker);

    // Compact stable fingerprint, for memoization.
    std::string key() const;
};

}  // namespace dfacert
