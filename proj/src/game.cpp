#include "dfacert/game.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dfacert {

std::string format_game_letter(const Alphabet& alphabet, GameLetter x) {
    return x == kResetLetter ? std::string("#") : alphabet.name(x);
}

std::string format_game_word(const Alphabet& alphabet, const GameWord& x) {
    if (x.empty()) return "<eps>";
    bool wide = false;
    for (GameLetter a : x)
        if (a != kResetLetter && alphabet.name(a).size() != 1) wide = true;
    std::string out;
    for (size_t i = 0; i < x.size(); ++i) {
        if (i > 0 && wide) out += '.';
        out += format_game_letter(alphabet, x[i]);
    }
    return out;
}

int Transcript::state_at(int j) const {
    if (j < 1 || j > positions()) throw std::out_of_range("state_at: position out of range");
    return j == 1 ? y1 : rounds[j - 2].y;
}

GameLetter Transcript::letter_at(int j) const {
    if (j < 1 || j > size()) throw std::out_of_range("letter_at: round out of range");
    return rounds[j - 1].x;
}

void Transcript::validate() const {
    if (k < 1) throw InputError("transcript: k must be positive");
    if (y1 < 1 || y1 > k) throw InputError("transcript: y1 out of range");
    for (const Round& r : rounds) {
        if (r.x != kResetLetter && (r.x < 0 || r.x >= alphabet.size()))
            throw InputError("transcript: letter out of range");
        if (r.y < 1 || r.y > k) throw InputError("transcript: state out of range");
    }
}

SegmentView segment(const Transcript& t, int j) {
    if (j < 1 || j > t.positions()) throw std::out_of_range("segment: position out of range");
    SegmentView s;
    s.position = j;
    s.reset_anchor = 0;
    for (int p = j - 1; p >= 1; --p) {
        if (t.letter_at(p) == kResetLetter) {
            s.reset_anchor = p;
            break;
        }
    }
    for (int p = s.reset_anchor + 1; p <= j - 1; ++p) s.word.push_back(t.letter_at(p));
    s.mapped_state = t.state_at(j);
    return s;
}

std::string ViolationWitness::describe(const Alphabet& alphabet) const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Reset:
            out << "reset violation at round " << j1
                << ": response after '#' differs from the initial state";
            break;
        case Kind::Determinism:
            out << "determinism violation: rounds " << j1 << " and " << j2
                << " leave the same state on the same letter with different successors";
            break;
        case Kind::Agreement:
            out << "agreement violation: positions " << j1 << " and " << j2 << " map "
                << format_word(alphabet, segment1) << (member1 ? " (in)" : " (out)") << " and "
                << format_word(alphabet, segment2) << (member2 ? " (in)" : " (out)")
                << " to the same state";
            break;
    }
    return out.str();
}

namespace {

// Chronological scan of a transcript. `classify`, when provided, labels the
// segment closed at each position; pairs are judged up to the last completed
// round, legality up to the last response.
std::optional<ViolationWitness> scan_transcript(const Transcript& t,
                                                MembershipTracker* tracker) {
    t.validate();
    const int rounds = t.size();
    std::map<std::pair<int, GameLetter>, std::pair<int, int>> det;  // (y,x) -> (j, y')
    std::vector<int> first_pos(t.k + 1, 0), first_neg(t.k + 1, 0);

    auto commit = [&](int position, int state) -> std::optional<ViolationWitness> {
        if (!tracker) return std::nullopt;
        SegmentClass c = tracker->current();
        if (c == SegmentClass::Free) return std::nullopt;
        auto witness = [&](int jpos, int jneg) {
            ViolationWitness w;
            w.kind = ViolationWitness::Kind::Agreement;
            w.j1 = jpos;
            w.j2 = jneg;
            w.segment1 = segment(t, jpos).word;
            w.segment2 = segment(t, jneg).word;
            w.member1 = true;
            w.member2 = false;  // callers reinterpret for separation
            return w;
        };
        if (c == SegmentClass::Both) return witness(position, position);
        bool positive = (c == SegmentClass::Positive);
        int& same = positive ? first_pos[state] : first_neg[state];
        int& opposite = positive ? first_neg[state] : first_pos[state];
        if (opposite != 0)
            return positive ? witness(position, opposite) : witness(opposite, position);
        if (same == 0) same = position;
        return std::nullopt;
    };

    if (auto w = commit(1, t.y1)) return w;
    for (int j = 1; j <= rounds; ++j) {
        GameLetter x = t.letter_at(j);
        int y = t.state_at(j);
        int y_next = t.state_at(j + 1);
        if (x == kResetLetter) {
            if (y_next != t.y1) {
                ViolationWitness w;
                w.kind = ViolationWitness::Kind::Reset;
                w.j1 = j;
                return w;
            }
        } else {
            auto [it, inserted] = det.emplace(std::make_pair(y, x), std::make_pair(j, y_next));
            if (!inserted && it->second.second != y_next) {
                ViolationWitness w;
                w.kind = ViolationWitness::Kind::Determinism;
                w.j1 = it->second.first;
                w.j2 = j;
                return w;
            }
        }
        if (tracker) {
            if (x == kResetLetter)
                tracker->reset();
            else
                tracker->advance(x);
        }
        if (j + 1 <= rounds) {
            if (auto w = commit(j + 1, y_next)) return w;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<ViolationWitness> check_legal(const Transcript& t) {
    return scan_transcript(t, nullptr);
}

PartialDfa induced_partial_dfa(const Transcript& t) {
    if (check_legal(t)) throw InputError("induced_partial_dfa: transcript is illegal");
    PartialDfa p;
    p.alphabet = t.alphabet;
    p.initial = t.y1 - 1;
    p.delta.assign(t.k, std::vector<State>(t.alphabet.size(), kUndefined));
    p.accepting.assign(t.k, false);
    for (int j = 1; j <= t.size(); ++j) {
        GameLetter x = t.letter_at(j);
        if (x == kResetLetter) continue;
        p.delta[t.state_at(j) - 1][x] = t.state_at(j + 1) - 1;
    }
    return p;
}

std::vector<signed char> segment_labels(const Transcript& t, const Dfa& language) {
    if (t.alphabet != language.alphabet)
        throw InputError("segment_labels: alphabet mismatch");
    std::vector<signed char> label(t.k, -1);
    MembershipTracker tracker(language);
    for (int j = 1; j <= t.positions(); ++j) {
        if (j > 1) {
            GameLetter x = t.letter_at(j - 1);
            if (x == kResetLetter)
                tracker.reset();
            else
                tracker.advance(x);
        }
        int state = t.state_at(j) - 1;
        if (label[state] == -1)
            label[state] = tracker.current() == SegmentClass::Positive ? 1 : 0;
    }
    return label;
}

std::optional<ViolationWitness> find_violation(const Transcript& t, const Dfa& language) {
    if (t.alphabet != language.alphabet)
        throw InputError("find_violation: alphabet mismatch");
    MembershipTracker tracker(language);
    return scan_transcript(t, &tracker);
}

std::optional<ViolationWitness> find_violation_sep(const Transcript& t, const Dfa& l1,
                                                   const Dfa& l2) {
    if (t.alphabet != l1.alphabet || t.alphabet != l2.alphabet)
        throw InputError("find_violation_sep: alphabet mismatch");
    MembershipTracker tracker(l1, l2);
    auto w = scan_transcript(t, &tracker);
    if (w && w->kind == ViolationWitness::Kind::Agreement) w->member2 = true;  // in L2
    return w;
}

bool is_bad_prefix(const Transcript& t, const Dfa& language) {
    for (GameLetter x = kResetLetter; x < t.alphabet.size(); ++x) {
        for (int y = 1; y <= t.k; ++y) {
            Transcript extended = t;
            extended.rounds.push_back({x, y});
            if (!find_violation(extended, language)) return false;
        }
    }
    return true;
}

bool is_ordered(const Transcript& t) {
    if (t.y1 != 1) return false;
    int seen_max = t.y1;
    for (const Round& r : t.rounds) {
        if (r.y > seen_max + 1) return false;
        seen_max = std::max(seen_max, r.y);
    }
    return true;
}

// --- incremental analysis ---------------------------------------------------

MembershipTracker::MembershipTracker(const Dfa& language)
    : l1_(&language), l2_(nullptr), s1_(language.initial), recognition_(true) {}

MembershipTracker::MembershipTracker(const Dfa& l1, const Dfa& l2)
    : l1_(&l1), l2_(&l2), s1_(l1.initial), s2_(l2.initial), recognition_(false) {}

void MembershipTracker::reset() {
    s1_ = l1_->initial;
    if (l2_) s2_ = l2_->initial;
}

void MembershipTracker::advance(Letter a) {
    s1_ = l1_->next(s1_, a);
    if (l2_) s2_ = l2_->next(s2_, a);
}

SegmentClass MembershipTracker::current() const {
    if (recognition_)
        return l1_->accepting[s1_] ? SegmentClass::Positive : SegmentClass::Negative;
    bool in1 = l1_->accepting[s1_], in2 = l2_->accepting[s2_];
    if (in1 && in2) return SegmentClass::Both;
    if (in1) return SegmentClass::Positive;
    if (in2) return SegmentClass::Negative;
    return SegmentClass::Free;
}

PlayAnalysis::PlayAnalysis(int k_, int letters_, int y1_one_based, SegmentClass initial_class)
    : k(k_), letters(letters_), y1(y1_one_based - 1), cur(y1_one_based - 1) {
    delta.assign(static_cast<size_t>(k) * letters, -1);
    label.assign(k, -1);
    if (initial_class == SegmentClass::Positive) label[y1] = 1;
    if (initial_class == SegmentClass::Negative) label[y1] = 0;
    // SegmentClass::Both at the very first move can only happen for
    // overlapping separation languages; callers check the languages first.
}

int PlayAnalysis::discovered() const {
    int n = 0;
    for (signed char l : label)
        if (l != -1) ++n;
    return n;
}

StepEvent PlayAnalysis::step(GameLetter x, int y_one_based, MembershipTracker& tracker) {
    const int y = y_one_based - 1;
    if (x == kResetLetter) {
        if (y != y1) return StepEvent::ResetViolation;
        tracker.reset();
        cur = y1;
    } else {
        int& slot = delta_at(cur, x);
        if (slot != -1 && slot != y) return StepEvent::DeterminismViolation;
        slot = y;
        tracker.advance(x);
        cur = y;
    }
    SegmentClass c = tracker.current();
    if (c == SegmentClass::Both) return StepEvent::AgreementConflict;
    if (c != SegmentClass::Free) {
        signed char bit = (c == SegmentClass::Positive) ? 1 : 0;
        if (label[cur] == -1)
            label[cur] = bit;
        else if (label[cur] != bit)
            return StepEvent::AgreementConflict;
    }
    return StepEvent::Ok;
}

std::string PlayAnalysis::key() const {
    std::string out;
    out.reserve(delta.size() + label.size() + 2);
    for (int d : delta) out.push_back(static_cast<char>(d + 2));
    for (signed char l : label) out.push_back(static_cast<char>(l + 2));
    out.push_back(static_cast<char>(cur + 1));
    out.push_back(static_cast<char>(y1 + 1));
    return out;
}

}  // namespace dfacert
