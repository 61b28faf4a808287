#include <doctest.h>

#include "dfacert/families.hpp"
#include "dfacert/residual.hpp"
#include "helpers.hpp"

using namespace dfacert;
using namespace testutil;

TEST_CASE("residual_view on even-a and L_3") {
    ResidualView v = residual_view(even_count_dfa(ab(), "a"));
    CHECK(v.index() == 2);
    CHECK(v.representatives[0] == Word{});
    CHECK(v.representatives[1] == ab().word_from_chars("a"));
    // brute-force partition oracle: words up to length 3 against tails up to 3
    auto words = words_up_to(ab(), 3);
    Dfa even_a = even_count_dfa(ab(), "a");
    for (const Word& h1 : words)
        for (const Word& h2 : words) {
            bool same_class = true;
            for (const Word& t : words) {
                Word u1 = h1, u2 = h2;
                u1.insert(u1.end(), t.begin(), t.end());
                u2.insert(u2.end(), t.begin(), t.end());
                if (accepts(even_a, u1) != accepts(even_a, u2)) same_class = false;
            }
            CHECK(same_class == (v.class_of(h1) == v.class_of(h2)));
        }

    CHECK(residual_view(ln_family(3)).index() == 9);
    Dfa sigma_star = complement(intersect(even_a, complement(even_a)));
    CHECK(residual_view(sigma_star).index() == 1);
}

TEST_CASE("representatives_bounded lengths and inequivalence") {
    ResidualView v = residual_view(even_count_dfa(ab(), "a"));
    auto reps2 = representatives_bounded(v, 2);
    CHECK(reps2 == std::vector<Word>{Word{}, ab().word_from_chars("a")});
    CHECK(representatives_bounded(v, 1) == std::vector<Word>{Word{}});
    CHECK_THROWS_AS(representatives_bounded(v, 3), std::out_of_range);
    CHECK_THROWS_AS(representatives_bounded(v, 0), std::out_of_range);

    ResidualView l3 = residual_view(ln_family(3));
    auto reps8 = representatives_bounded(l3, 8);
    CHECK(reps8.size() == 8);
    for (int i = 0; i < 8; ++i) {
        CHECK(static_cast<int>(reps8[i].size()) <= 7);
        for (int j = i + 1; j < 8; ++j) {
            // pairwise inequivalent: a distinguishing tail exists
            Word t = distinguishing_tail(l3, l3.class_of(reps8[i]), l3.class_of(reps8[j]));
            Word u1 = reps8[i], u2 = reps8[j];
            u1.insert(u1.end(), t.begin(), t.end());
            u2.insert(u2.end(), t.begin(), t.end());
            CHECK(accepts(l3.minimal, u1) != accepts(l3.minimal, u2));
        }
    }
}

TEST_CASE("distinguishing_tail basic cases") {
    ResidualView even_a = residual_view(even_count_dfa(ab(), "a"));
    CHECK(distinguishing_tail(even_a, 0, 1) == Word{});  // one accepting, one not
    CHECK_THROWS_AS(distinguishing_tail(even_a, 1, 1), std::invalid_argument);

    ResidualView l3 = residual_view(ln_family(3));
    State r1 = l3.class_of(l3.minimal.alphabet.word_from_tokens("a a a b1"));
    State r2 = l3.class_of(l3.minimal.alphabet.word_from_tokens("a a a b2"));
    Word t = distinguishing_tail(l3, r1, r2);
    CHECK(t.size() == 1);
    CHECK(l3.minimal.alphabet.name(t[0]) == "b1");  // lex-least of b1/b2
}

TEST_CASE("distinguishing tails exist for all pairs and respect the length bound") {
    std::mt19937 rng(101);
    int max_seen = 0;
    for (int trial = 0; trial < 50; ++trial) {
        ResidualView v = residual_view(random_dfa(rng));
        const int n = v.index();
        for (State q1 = 0; q1 < n; ++q1)
            for (State q2 = q1 + 1; q2 < n; ++q2) {
                Word t = distinguishing_tail(v, q1, q2);
                CHECK(static_cast<int>(t.size()) <= n);
                max_seen = std::max(max_seen, static_cast<int>(t.size()));
                CHECK(v.minimal.accepting[v.minimal.run_from(q1, t)] !=
                      v.minimal.accepting[v.minimal.run_from(q2, t)]);
            }
    }
    MESSAGE("longest distinguishing tail observed: ", max_seen);
}

TEST_CASE("representative-tail interplay") {
    ResidualView l3 = residual_view(ln_family(3));
    for (State q1 = 0; q1 < l3.index(); ++q1)
        for (State q2 = q1 + 1; q2 < l3.index(); ++q2) {
            Word t = distinguishing_tail(l3, q1, q2);
            Word u1 = l3.representatives[q1], u2 = l3.representatives[q2];
            u1.insert(u1.end(), t.begin(), t.end());
            u2.insert(u2.end(), t.begin(), t.end());
            CHECK(accepts(l3.minimal, u1) != accepts(l3.minimal, u2));
        }
}
