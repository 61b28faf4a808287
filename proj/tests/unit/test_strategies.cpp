#include <doctest.h>

#include "dfacert/families.hpp"
#include "dfacert/strategies.hpp"
#include "helpers.hpp"

using namespace dfacert;
using namespace testutil;

namespace {

int online_bound(int k, int n) { return k * (k + 1) + 2 * (k + n) + k + 3; }

}  // namespace

TEST_CASE("honest prover on the minimal automaton never loses") {
    Dfa even_a = even_count_dfa(ab(), "a");
    Dfa minimal = minimize(even_a);
    auto prover = honest_prover(minimal, 2);
    auto refuter = probing_refuter(ab());
    MatchOutcome out = run_match(*prover, *refuter, even_a, 2, 300);
    CHECK_FALSE(out.refuter_won());
    CHECK(out.horizon_hit);
    CHECK_FALSE(check_legal(out.transcript).has_value());  // always legal
}

TEST_CASE("honest prover transcripts are ordered") {
    Dfa b4 = survival_b(4);
    auto prover = honest_prover(b4, 6);
    auto refuter = random_refuter(ab(), 99);
    MatchOutcome out = run_match(*prover, *refuter, survival_a(4), 6, 60);
    CHECK(is_ordered(out.transcript));
}

TEST_CASE("online refuter beats every undersized prover within the bound") {
    Dfa l3 = minimize(ln_family(3));
    const int n = l3.state_count();  // 9
    const int k = n - 1;             // 8
    const int bound = online_bound(k, n);
    CHECK(bound == 117);

    auto check_win = [&](std::unique_ptr<ProverStrategy> prover) {
        auto refuter = online_refuter(l3, k);
        MatchOutcome out = run_match(*prover, *refuter, l3, k, bound);
        CHECK(out.refuter_won());
        CHECK(out.rounds <= bound);
        // the witness re-verifies on the final transcript
        CHECK(find_violation(out.transcript, l3).has_value());
    };
    check_win(greedy_residual_prover(l3, k));
    check_win(honest_prover(ln_merged(3, 1, 2), k));
    std::mt19937 rng(3);
    for (int i = 0; i < 3; ++i)
        check_win(honest_prover(random_dfa(rng, k, l3.alphabet), k));
}

TEST_CASE("online refuter on even-a with k=1") {
    Dfa even_a = even_count_dfa(ab(), "a");
    const int bound = online_bound(1, 2);
    CHECK(bound == 12);
    auto prover = greedy_residual_prover(even_a, 1);
    auto refuter = online_refuter(even_a, 1);
    MatchOutcome out = run_match(*prover, *refuter, even_a, 1, bound);
    CHECK(out.refuter_won());
    CHECK(out.rounds <= bound);
    CHECK_THROWS_AS(online_refuter(even_a, 2), InputError);  // k >= index
}

TEST_CASE("greedy prover mirrors the honest one when k covers the index") {
    Dfa even_a = even_count_dfa(ab(), "a");
    auto greedy = greedy_residual_prover(even_a, 3);
    auto honest = honest_prover(minimize(even_a), 3);
    auto r1 = probing_refuter(ab());
    auto r2 = probing_refuter(ab());
    MatchOutcome o1 = run_match(*greedy, *r1, even_a, 3, 120);
    MatchOutcome o2 = run_match(*honest, *r2, even_a, 3, 120);
    REQUIRE(o1.transcript.rounds.size() == o2.transcript.rounds.size());
    CHECK(o1.transcript.y1 == o2.transcript.y1);
    for (size_t i = 0; i < o1.transcript.rounds.size(); ++i)
        CHECK(o1.transcript.rounds[i].y == o2.transcript.rounds[i].y);
}

TEST_CASE("greedy prover merge against the survival refutation script") {
    // n = 4: follow the (n+3)-state minimal automaton with k = n+2 numbers;
    // the scripted a^5 # b a refutation wins within n+4 = 8 rounds.
    const int n = 4;
    Dfa lang = survival_a(n);
    const int k = n + 2;
    GameWord script;
    for (int i = 0; i < n + 1; ++i) script.push_back(0);
    script.push_back(kResetLetter);
    script.push_back(1);
    script.push_back(0);
    auto prover = greedy_residual_prover(lang, k);
    auto refuter = scripted_refuter(script);
    MatchOutcome out = run_match(*prover, *refuter, lang, k, n + 10);
    CHECK(out.refuter_won());
    CHECK(out.rounds <= n + 4);

    // deterministic replay: identical transcripts both times
    auto prover2 = greedy_residual_prover(lang, k);
    auto refuter2 = scripted_refuter(script);
    MatchOutcome out2 = run_match(*prover2, *refuter2, lang, k, n + 10);
    REQUIRE(out.transcript.rounds.size() == out2.transcript.rounds.size());
    for (size_t i = 0; i < out.transcript.rounds.size(); ++i) {
        CHECK(out.transcript.rounds[i].x == out2.transcript.rounds[i].x);
        CHECK(out.transcript.rounds[i].y == out2.transcript.rounds[i].y);
    }
}

TEST_CASE("scripted prover replays the worked example") {
    Transcript fixture = table1_transcript();
    std::vector<int> moves{fixture.y1};
    GameWord letters;
    for (const Round& r : fixture.rounds) {
        moves.push_back(r.y);
        letters.push_back(r.x);
    }
    auto prover = scripted_prover(moves);
    auto refuter = scripted_refuter(letters);
    Dfa even_b = even_count_dfa(ab(), "b");
    MatchOutcome out = run_match(*prover, *refuter, even_b, 2, 50);
    CHECK(out.refuter_won());
    REQUIRE(out.witness.has_value());
    CHECK(out.witness->kind == ViolationWitness::Kind::Agreement);
    CHECK(out.witness->j1 == 2);
    CHECK(out.witness->j2 == 3);
}

TEST_CASE("match outcome witness always re-verifies") {
    std::mt19937 rng(17);
    int wins = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Dfa lang = minimize(random_dfa(rng));
        int k = 1 + static_cast<int>(rng() % 3);
        auto prover = greedy_residual_prover(lang, k);
        auto refuter = random_refuter(ab(), 1000 + trial);
        MatchOutcome out = run_match(*prover, *refuter, lang, k, 80);
        bool reported = out.refuter_won();
        bool recomputed = find_violation(out.transcript, lang).has_value();
        CHECK(reported == recomputed);
        wins += reported ? 1 : 0;
    }
    CHECK(wins > 0);  // the corpus must exercise both outcomes
}

TEST_CASE("protocol errors name the offender") {
    Dfa even_a = even_count_dfa(ab(), "a");
    auto bad_prover = scripted_prover({5});
    auto refuter = probing_refuter(ab());
    try {
        run_match(*bad_prover, *refuter, even_a, 2, 10);
        FAIL("expected a protocol error");
    } catch (const ProtocolError& e) {
        CHECK(e.offender == "prover");
    }
}

TEST_CASE("universal certificate for even-a at k=1") {
    Alphabet sigma{{"a"}};
    Dfa lang = make_dfa(sigma, 0, {{1}, {0}}, {0});  // even number of a's
    UniversalCertificate cert = build_universal_certificate(lang, 1);
    CHECK(cert.blocks.size() == 1);
    CHECK(static_cast<long long>(cert.x.size()) <= (1 + 2 + 1) * 1 * 2);
    CHECK(verify_universal(cert.x, lang, 1));
    CHECK_FALSE(verify_universal({}, lang, 1));
}

TEST_CASE("universal certificate bound and verification on L_2") {
    Dfa l2 = minimize(ln_family(2));
    const int n = l2.state_count();
    for (int k = 1; k <= 3; ++k) {
        UniversalCertificate cert = build_universal_certificate(l2, k);
        CHECK(static_cast<long long>(cert.x.size()) <=
              static_cast<long long>(k + n + 1) * k * (k + 1));
        CHECK(verify_universal(cert.x, l2, k));
    }
}

TEST_CASE("verify_universal distinguishes forcing from non-forcing prefixes") {
    Dfa even_a = even_count_dfa(ab(), "a");
    CHECK(verify_universal(build_universal_bad_prefix(even_a, 1), even_a, 1));
    // a lone letter leaves its reply unconstrained
    CHECK_FALSE(verify_universal({0}, even_a, 1));
    CHECK_FALSE(verify_universal({kResetLetter, kResetLetter}, even_a, 1));
    // with one state, any answered 'a' already clashes with the empty segment
    CHECK(verify_universal({0, 0}, even_a, 1));
    // at k = 2 the same prefix is survivable
    CHECK_FALSE(verify_universal({0, 0}, even_a, 2));
}

TEST_CASE("verify_universal scale guard") {
    Dfa l3 = minimize(ln_family(3));
    GameWord x(100, 0);
    CHECK_THROWS_AS(verify_universal(x, l3, 8), ScaleError);
}

TEST_CASE("min_rounds_to_refute") {
    const int n = 4;
    Dfa lang = survival_a(n);
    const int k = n + 2;

    auto greedy_factory = [&] { return greedy_residual_prover(lang, k); };
    auto rounds = min_rounds_to_refute(greedy_factory, lang, k);
    REQUIRE(rounds.has_value());
    CHECK(*rounds <= n + 4);

    Dfa b = survival_b(n);
    auto b_factory = [&] { return honest_prover(b, k); };
    auto b_rounds = min_rounds_to_refute(b_factory, lang, k);
    REQUIRE(b_rounds.has_value());
    CHECK(*b_rounds == 2 * n + 1);  // the length-2n disagreement plus its report

    // a faithful prover with enough states is unbeatable
    Dfa minimal = minimize(lang);
    auto honest_factory = [&] { return honest_prover(minimal, minimal.state_count()); };
    CHECK_FALSE(min_rounds_to_refute(honest_factory, lang, minimal.state_count()).has_value());
}
