#include "dfacert/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dfacert {

namespace {

using nlohmann::json;

[[noreturn]] void fail(int line, const std::string& what) {
    throw InputError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

PartialDfa parse_dfa_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<Alphabet> alphabet;
    std::optional<int> states;
    std::optional<int> initial;
    std::optional<std::vector<int>> accepting_ids;
    struct Edge {
        int line, src, dst;
        Letter letter;
    };
    std::vector<Edge> edges;

    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line;
        if (auto pos = stripped.find(';'); pos != std::string::npos)
            stripped.resize(pos);
        std::istringstream row(stripped);
        std::string first;
        if (!(row >> first)) continue;

        auto parse_int = [&](const std::string& tok) {
            try {
                size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size()) fail(lineno, "not a number: '" + tok + "'");
                return v;
            } catch (const std::exception&) {
                fail(lineno, "not a number: '" + tok + "'");
            }
        };

        if (first == "alphabet:") {
            std::vector<std::string> names;
            std::string tok;
            while (row >> tok) names.push_back(tok);
            if (names.empty()) fail(lineno, "empty alphabet");
            try {
                alphabet = Alphabet(names);
            } catch (const InputError& e) {
                fail(lineno, e.what());
            }
        } else if (first == "states:") {
            std::string tok;
            if (!(row >> tok)) fail(lineno, "missing state count");
            states = parse_int(tok);
            if (*states < 1) fail(lineno, "state count must be positive");
        } else if (first == "initial:") {
            std::string tok;
            if (!(row >> tok)) fail(lineno, "missing initial state");
            initial = parse_int(tok);
        } else if (first == "accepting:") {
            std::vector<int> ids;
            std::string tok;
            while (row >> tok) ids.push_back(parse_int(tok));
            accepting_ids = std::move(ids);
        } else {
            if (!alphabet) fail(lineno, "transition before the alphabet line");
            Edge e;
            e.line = lineno;
            e.src = parse_int(first);
            std::string letter, dst;
            if (!(row >> letter >> dst)) fail(lineno, "expected 'src letter dst'");
            e.letter = alphabet->find(letter);
            if (e.letter < 0) fail(lineno, "unknown letter '" + letter + "'");
            e.dst = parse_int(dst);
            std::string extra;
            if (row >> extra) fail(lineno, "trailing tokens after transition");
            edges.push_back(e);
        }
    }
    if (!alphabet) throw InputError("missing 'alphabet:' line");
    if (!states) throw InputError("missing 'states:' line");
    if (!initial) throw InputError("missing 'initial:' line");
    if (!accepting_ids) throw InputError("missing 'accepting:' line");

    PartialDfa d;
    d.alphabet = *alphabet;
    d.initial = *initial;
    d.delta.assign(*states, std::vector<State>(alphabet->size(), kUndefined));
    d.accepting.assign(*states, false);
    if (d.initial < 0 || d.initial >= *states) throw InputError("initial state out of range");
    for (int id : *accepting_ids) {
        if (id < 0 || id >= *states) throw InputError("accepting state out of range");
        d.accepting[id] = true;
    }
    for (const Edge& e : edges) {
        if (e.src < 0 || e.src >= *states) fail(e.line, "source state out of range");
        if (e.dst < 0 || e.dst >= *states) fail(e.line, "target state out of range");
        State& slot = d.delta[e.src][e.letter];
        if (slot != kUndefined) fail(e.line, "duplicate transition");
        slot = e.dst;
    }
    return d;
}

PartialDfa parse_dfa_file(const std::string& path) {
    return parse_dfa_text(read_text_file(path));
}

std::string format_dfa_text(const PartialDfa& d) {
    std::ostringstream out;
    out << "alphabet:";
    for (const auto& name : d.alphabet.letters()) out << ' ' << name;
    out << '\n';
    out << "states: " << d.state_count() << '\n';
    out << "initial: " << d.initial << '\n';
    out << "accepting:";
    for (State s = 0; s < d.state_count(); ++s)
        if (d.accepting[s]) out << ' ' << s;
    out << '\n';
    for (State s = 0; s < d.state_count(); ++s)
        for (Letter a = 0; a < d.alphabet.size(); ++a)
            if (d.delta[s][a] != kUndefined)
                out << s << ' ' << d.alphabet.name(a) << ' ' << d.delta[s][a] << '\n';
    return out.str();
}

std::string format_dfa_text(const Dfa& d) {
    PartialDfa p;
    p.alphabet = d.alphabet;
    p.initial = d.initial;
    p.delta = d.delta;
    p.accepting = d.accepting;
    return format_dfa_text(p);
}

void write_dfa_file(const std::string& path, const Dfa& d) {
    write_text_file(path, format_dfa_text(d));
}

namespace {

json transcript_to_json_value(const Transcript& t) {
    json rounds = json::array();
    for (const Round& r : t.rounds)
        rounds.push_back({{"x", format_game_letter(t.alphabet, r.x)}, {"y", r.y}});
    return json{{"k", t.k},
                {"alphabet", t.alphabet.letters()},
                {"y1", t.y1},
                {"rounds", std::move(rounds)}};
}

Transcript transcript_from_json_value(const json& j) {
    Transcript t;
    t.k = j.at("k").get<int>();
    t.alphabet = Alphabet(j.at("alphabet").get<std::vector<std::string>>());
    t.y1 = j.at("y1").get<int>();
    for (const json& r : j.at("rounds")) {
        Round round;
        std::string x = r.at("x").get<std::string>();
        round.x = (x == "#") ? kResetLetter : t.alphabet.require(x);
        round.y = r.at("y").get<int>();
        t.rounds.push_back(round);
    }
    t.validate();
    return t;
}

json word_to_json(const Alphabet& alphabet, const Word& w) {
    json out = json::array();
    for (Letter a : w) out.push_back(alphabet.name(a));
    return out;
}

Word word_from_json(const Alphabet& alphabet, const json& j) {
    Word w;
    for (const json& tok : j) w.push_back(alphabet.require(tok.get<std::string>()));
    return w;
}

const char* kind_name(ViolationWitness::Kind k) {
    switch (k) {
        case ViolationWitness::Kind::Reset: return "reset";
        case ViolationWitness::Kind::Determinism: return "determinism";
        case ViolationWitness::Kind::Agreement: return "agreement";
    }
    return "?";
}

}  // namespace

std::string transcript_to_json(const Transcript& t) {
    return transcript_to_json_value(t).dump(2);
}

Transcript transcript_from_json(const std::string& text) {
    try {
        return transcript_from_json_value(json::parse(text));
    } catch (const json::exception& e) {
        throw InputError(std::string("transcript JSON: ") + e.what());
    }
}

std::string certificate_to_json(const Certificate& c) {
    json j = transcript_to_json_value(c.transcript);
    json w{{"kind", kind_name(c.witness.kind)}};
    switch (c.witness.kind) {
        case ViolationWitness::Kind::Reset:
            w["j"] = c.witness.j1;
            break;
        case ViolationWitness::Kind::Determinism:
            w["j1"] = c.witness.j1;
            w["j2"] = c.witness.j2;
            break;
        case ViolationWitness::Kind::Agreement:
            w["j1"] = c.witness.j1;
            w["j2"] = c.witness.j2;
            w["segment1"] = word_to_json(c.transcript.alphabet, c.witness.segment1);
            w["segment2"] = word_to_json(c.transcript.alphabet, c.witness.segment2);
            w["member1"] = c.witness.member1;
            w["member2"] = c.witness.member2;
            break;
    }
    j["witness"] = std::move(w);
    return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        Certificate c;
        c.transcript = transcript_from_json_value(j);
        const json& w = j.at("witness");
        std::string kind = w.at("kind").get<std::string>();
        if (kind == "reset") {
            c.witness.kind = ViolationWitness::Kind::Reset;
            c.witness.j1 = w.at("j").get<int>();
        } else if (kind == "determinism") {
            c.witness.kind = ViolationWitness::Kind::Determinism;
            c.witness.j1 = w.at("j1").get<int>();
            c.witness.j2 = w.at("j2").get<int>();
        } else if (kind == "agreement") {
            c.witness.kind = ViolationWitness::Kind::Agreement;
            c.witness.j1 = w.at("j1").get<int>();
            c.witness.j2 = w.at("j2").get<int>();
            c.witness.segment1 = word_from_json(c.transcript.alphabet, w.at("segment1"));
            c.witness.segment2 = word_from_json(c.transcript.alphabet, w.at("segment2"));
            c.witness.member1 = w.value("member1", true);
            c.witness.member2 = w.value("member2", false);
        } else {
            throw InputError("unknown witness kind '" + kind + "'");
        }
        return c;
    } catch (const json::exception& e) {
        throw InputError(std::string("certificate JSON: ") + e.what());
    }
}

void write_certificate_file(const std::string& path, const Certificate& c) {
    write_text_file(path, certificate_to_json(c) + "\n");
}

Certificate read_certificate_file(const std::string& path) {
    return certificate_from_json(read_text_file(path));
}

namespace {

// The clause re-validation shared by recognition and separation: `classify`
// reports each position's segment membership in the two reference sets.
std::optional<std::string> check_certificate_impl(
    const Certificate& c, const std::function<std::pair<bool, bool>(int)>& classify) {
    const Transcript& t = c.transcript;
    const ViolationWitness& w = c.witness;
    auto position_ok = [&](int j) { return j >= 1 && j <= t.positions(); };
    switch (w.kind) {
        case ViolationWitness::Kind::Reset: {
            if (w.j1 < 1 || w.j1 > t.size()) return "reset position out of range";
            if (t.letter_at(w.j1) != kResetLetter) return "claimed round is not a reset";
            if (t.state_at(w.j1 + 1) == t.y1) return "response after '#' equals y1";
            return std::nullopt;
        }
        case ViolationWitness::Kind::Determinism: {
            if (w.j1 < 1 || w.j2 < 1 || w.j1 > t.size() || w.j2 > t.size())
                return "determinism positions out of range";
            if (w.j1 == w.j2) return "determinism positions must differ";
            if (t.letter_at(w.j1) == kResetLetter || t.letter_at(w.j1) != t.letter_at(w.j2))
                return "claimed rounds do not share a letter of the alphabet";
            if (t.state_at(w.j1) != t.state_at(w.j2))
                return "claimed rounds do not leave the same state";
            if (t.state_at(w.j1 + 1) == t.state_at(w.j2 + 1))
                return "claimed rounds agree on the successor";
            return std::nullopt;
        }
        case ViolationWitness::Kind::Agreement: {
            if (!position_ok(w.j1) || !position_ok(w.j2))
                return "agreement positions out of range";
            if (t.state_at(w.j1) != t.state_at(w.j2))
                return "claimed positions map to different states";
            SegmentView s1 = segment(t, w.j1), s2 = segment(t, w.j2);
            if (s1.word != w.segment1 || s2.word != w.segment2)
                return "claimed segments do not match the transcript";
            auto [in_first_1, in_second_1] = classify(w.j1);
            auto [in_first_2, in_second_2] = classify(w.j2);
            (void)in_second_1;
            (void)in_first_2;
            if (!in_first_1) return "first segment not in the first language";
            if (!in_second_2) return "second segment not in the second set";
            return std::nullopt;
        }
    }
    return "unknown witness kind";
}

}  // namespace

std::optional<std::string> check_certificate(const Certificate& c, const Dfa& language) {
    if (c.transcript.alphabet != language.alphabet)
        return "alphabet mismatch between certificate and language";
    return check_certificate_impl(c, [&](int j) {
        bool in = accepts(language, segment(c.transcript, j).word);
        return std::pair<bool, bool>{in, !in};
    });
}

std::optional<std::string> check_certificate_sep(const Certificate& c, const Dfa& l1,
                                                 const Dfa& l2) {
    if (c.transcript.alphabet != l1.alphabet || c.transcript.alphabet != l2.alphabet)
        return "alphabet mismatch between certificate and languages";
    return check_certificate_impl(c, [&](int j) {
        Word word = segment(c.transcript, j).word;
        return std::pair<bool, bool>{accepts(l1, word), accepts(l2, word)};
    });
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace dfacert
