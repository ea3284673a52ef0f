#include "doctest.h"

#include <set>
#include <stdexcept>

#include "delsub/channel.hpp"
#include "delsub/congruent.hpp"
#include "delsub/error_model.hpp"
#include "delsub/word.hpp"

#include "oracles.hpp"

using delsub::CollisionCase;
using delsub::CollisionWitness;
using delsub::CongruentConstraint;
using delsub::Word;

TEST_CASE("constraint text form round-trips") {
    auto c = CongruentConstraint::parse("gamma=1,2,3;a=0;N=4");
    CHECK(c.gamma == std::vector<long long>{1, 2, 3});
    CHECK(c.a == 0);
    CHECK(c.N == 4);
    CHECK(CongruentConstraint::parse(c.str()).str() == c.str());

    CHECK_THROWS_AS(CongruentConstraint::parse("gamma=1,2;a=9;N=4"), std::invalid_argument);
    CHECK_THROWS_AS(CongruentConstraint::parse("a=0;N=4"), std::invalid_argument);
    CHECK_THROWS_AS(CongruentConstraint::parse("gamma=1;a=0;N=0"), std::invalid_argument);
    CHECK_THROWS_AS(CongruentConstraint::parse("nonsense"), std::invalid_argument);
}

TEST_CASE("membership") {
    CongruentConstraint yes({1, 2, 3, 4}, 4, 13);
    CongruentConstraint no({1, 2, 3, 4}, 5, 13);
    CHECK(delsub::is_member(Word::parse("1010", 2), yes));
    CHECK_FALSE(delsub::is_member(Word::parse("1010", 2), no));
    CHECK(delsub::is_member(Word::parse("021", 3), CongruentConstraint({1, 2, 3}, 0, 7)));
    CHECK_THROWS_AS(delsub::is_member(Word::parse("10", 2), yes), std::invalid_argument);

    // negative weights reduce into [0, N)
    CHECK(delsub::weighted_residue(Word::parse("11", 2), {-1, -2}, 5) == 2);
}

TEST_CASE("enumeration") {
    auto single = delsub::enumerate_congruent({CongruentConstraint({1}, 0, 2)}, 2, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].str() == "0");

    auto vt = delsub::enumerate_congruent({CongruentConstraint({1, 2, 3}, 0, 4)}, 2, 3);
    REQUIRE(vt.size() == 2);
    CHECK(vt[0].str() == "000");
    CHECK(vt[1].str() == "101");

    auto all = delsub::enumerate_congruent({}, 2, 2);
    CHECK(all.size() == 4);

    // residue classes partition the space
    for (unsigned q : {2u, 3u}) {
        std::size_t total = 0;
        for (long long a = 0; a < 5; ++a) {
            total += delsub::enumerate_congruent({CongruentConstraint({3, 1, 4, 1}, a, 5)}, q, 4)
                         .size();
        }
        CHECK(total == delsub::space_size(q, 4));
    }
}

TEST_CASE("collision harvest finds replaying witnesses") {
    Word x = Word::parse("0100", 2);
    Word y = Word::parse("1000", 2);
    auto witnesses = delsub::collect_collisions(x, y);
    CHECK(!witnesses.empty());
    bool saw_reducible = false;
    for (const auto& w : witnesses) {
        CHECK(w.replays());
        CHECK(w.d_x <= w.d_y);
        if (w.reducible()) saw_reducible = true;
    }
    CHECK(saw_reducible);

    CHECK(delsub::collect_collisions(Word::parse("0000", 2), Word::parse("1111", 2)).empty());
    CHECK_THROWS_AS(delsub::collect_collisions(Word::parse("012", 3), Word::parse("000", 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(delsub::collect_collisions(Word::parse("01", 2), Word::parse("011", 2)),
                    std::invalid_argument);
}

TEST_CASE("a tampered witness is rejected by the checkers") {
    Word x = Word::parse("0100", 2);
    Word y = Word::parse("1000", 2);
    auto witnesses = delsub::collect_collisions(x, y);
    REQUIRE(!witnesses.empty());
    CollisionWitness w = witnesses.front();
    if (w.e_y) {
        w.e_y = (*w.e_y % (w.z.size())) + 1;
    } else {
        w.e_y = 1;
    }
    if (w.replays()) return;  // the shift happened to land on another valid pattern
    CongruentConstraint c({1, 2, 3, 4}, delsub::weighted_residue(w.x, {1, 2, 3, 4}, 7), 7);
    auto check = delsub::check_outside_window_identities(w, c);
    CHECK_FALSE(check.preconditions_ok);
    CHECK(check.precondition_error == "witness does not replay");
}

TEST_CASE("degenerate witness with equal words passes") {
    CollisionWitness w;
    w.x = Word::parse("0110", 2);
    w.y = w.x;
    w.d_x = 2;
    w.d_y = 2;
    w.z = delsub::apply_del_sub(w.x, 2, {}, {});
    REQUIRE(w.replays());
    CongruentConstraint c({1, 2, 3, 4}, delsub::weighted_residue(w.x, {1, 2, 3, 4}, 9), 9);
    auto check = delsub::check_outside_window_identities(w, c);
    CHECK(check.preconditions_ok);
    CHECK(check.all_hold());
}

TEST_CASE("reducible collisions break the flip and congruence identities") {
    // 0100 and 1000 share z=101 with both sides substituting the same position
    // of z; the printed identities fail there, so the harvest excludes them.
    Word x = Word::parse("0100", 2);
    Word y = Word::parse("1000", 2);
    // gamma_1 = gamma_2 makes the two words members of one constraint.
    std::vector<long long> gamma{1, 1, 5, 2};
    long long rx = delsub::weighted_residue(x, gamma, 7);
    REQUIRE(rx == delsub::weighted_residue(y, gamma, 7));
    bool found = false;
    for (const auto& w : delsub::collect_collisions(x, y)) {
        if (!w.reducible() || w.z.str() != "101") continue;
        if (delsub::classify_collision(w) != delsub::CollisionCase::outside_window) continue;
        found = true;
        auto check =
            delsub::check_outside_window_identities(w, CongruentConstraint(gamma, rx, 7));
        CHECK(check.preconditions_ok);
        CHECK_FALSE(check.all_hold());
    }
    CHECK(found);
}

namespace {

// Deterministic gamma draws for harvested witnesses; N is forced to divide the
// weighted difference so both words land in one congruent code.
struct HarvestStats {
    uint64_t checked = 0;
    uint64_t failed = 0;
};

void harvest_and_check(const Word& x, const Word& y, delsub::SplitMix64& rng, HarvestStats& stats) {
    const std::size_t n = x.size();
    for (const auto& w : delsub::collect_collisions(x, y)) {
        if (w.reducible()) continue;
        std::vector<long long> gamma(n);
        long long diff = 0;
        bool usable = false;
        for (int attempt = 0; attempt < 8 && !usable; ++attempt) {
            for (auto& g : gamma) g = 1 + static_cast<long long>(rng.below(37));
            diff = 0;
            for (std::size_t i = 0; i < n; ++i) {
                diff += gamma[i] * (static_cast<long long>(x[i]) - static_cast<long long>(y[i]));
            }
            usable = diff == 0 || diff >= 2 || diff <= -2;
        }
        if (!usable) continue;
        long long N = diff == 0 ? 2 + static_cast<long long>(rng.below(11))
                                : (diff < 0 ? -diff : diff);
        CongruentConstraint c(gamma, delsub::weighted_residue(x, gamma, N), N);
        REQUIRE(delsub::is_member(x, c));
        REQUIRE(delsub::is_member(y, c));

        bool ok = false;
        switch (delsub::classify_collision(w)) {
            case CollisionCase::outside_window:
                ok = delsub::check_outside_window_identities(w, c).all_hold();
                break;
            case CollisionCase::first_inside: {
                auto r = delsub::check_inside_window_congruence(w, c, 1);
                ok = r.preconditions_ok && r.congruence;
                break;
            }
            case CollisionCase::both_inside: {
                auto r = delsub::check_inside_window_congruence(w, c, 2);
                ok = r.preconditions_ok && r.congruence;
                break;
            }
            case CollisionCase::mirrored: {
                auto swapped = delsub::swap_substitutions(w);
                REQUIRE(swapped.replays());
                auto r = delsub::check_inside_window_congruence(swapped, c, 1);
                ok = r.preconditions_ok && r.congruence;
                break;
            }
        }
        ++stats.checked;
        if (!ok) ++stats.failed;
    }
}

}  // namespace

TEST_CASE("window congruences hold on every harvested collision (small sweep)") {
    delsub::SplitMix64 rng(2024);
    HarvestStats stats;
    for (std::size_t n = 4; n <= 6; ++n) {
        auto words = oracle::all_words(2, n);
        for (std::size_t i = 0; i < words.size(); ++i) {
            for (std::size_t j = i + 1; j < words.size(); ++j) {
                harvest_and_check(oracle::to_word(words[i], 2), oracle::to_word(words[j], 2), rng,
                                  stats);
            }
        }
    }
    CHECK(stats.checked > 1000);
    CHECK(stats.failed == 0);
}

TEST_CASE("case mismatch is reported as a precondition error") {
    // Find a collision whose x-substitution is inside the window, then ask
    // for the wrong case.
    for (std::size_t n = 4; n <= 6; ++n) {
        auto words = oracle::all_words(2, n);
        for (std::size_t i = 0; i < words.size(); ++i) {
            for (std::size_t j = 0; j < words.size(); ++j) {
                if (i == j) continue;
                auto x = oracle::to_word(words[i], 2);
                auto y = oracle::to_word(words[j], 2);
                for (const auto& w : delsub::collect_collisions(x, y)) {
                    if (delsub::classify_collision(w) != CollisionCase::first_inside) continue;
                    std::vector<long long> gamma(n, 1);
                    auto wrong = delsub::check_inside_window_congruence(
                        w, CongruentConstraint(gamma, delsub::weighted_residue(w.x, gamma, 3), 3),
                        2);
                    CHECK_FALSE(wrong.preconditions_ok);
                    return;
                }
            }
        }
    }
    FAIL("expected at least one inside-window collision in lengths 4 through 6");
}

TEST_CASE("substitution swap symmetry") {
    CHECK(delsub::check_substitution_swap_symmetry(Word::parse("0110", 2),
                                                   Word::parse("0110", 2)));
    CHECK(delsub::check_substitution_swap_symmetry(Word::parse("00000", 2),
                                                   Word::parse("11111", 2)));
    for (std::size_t n = 4; n <= 6; ++n) {
        auto words = oracle::all_words(2, n);
        for (std::size_t i = 0; i < words.size(); ++i) {
            for (std::size_t j = i; j < words.size(); ++j) {
                CHECK(delsub::check_substitution_swap_symmetry(oracle::to_word(words[i], 2),
                                                               oracle::to_word(words[j], 2)));
            }
        }
    }
}

TEST_CASE("complements of co-members share a residue") {
    delsub::SplitMix64 rng(77);
    for (int trial = 0; trial < 2000; ++trial) {
        std::size_t n = 4 + rng.below(5);
        std::vector<long long> gamma(n);
        for (auto& g : gamma) g = static_cast<long long>(rng.below(21)) - 10;
        long long N = 2 + static_cast<long long>(rng.below(12));
        Word x = delsub::word_at(rng.below(delsub::space_size(2, n)), 2, n);
        Word y = delsub::word_at(rng.below(delsub::space_size(2, n)), 2, n);
        if (delsub::weighted_residue(x, gamma, N) != delsub::weighted_residue(y, gamma, N))
            continue;
        CHECK(delsub::weighted_residue(delsub::complement(x), gamma, N) ==
              delsub::weighted_residue(delsub::complement(y), gamma, N));
    }
}
