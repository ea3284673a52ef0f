#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "delsub/binary_code.hpp"
#include "delsub/channel.hpp"
#include "delsub/congruent.hpp"
#include "delsub/error_model.hpp"
#include "delsub/verify.hpp"
#include "delsub/word.hpp"

#include "oracles.hpp"

using delsub::BinaryCodeParams;
using delsub::BinaryDelSubCode;
using delsub::Word;

namespace {

bool same_params(const BinaryCodeParams& p, long long a, long long b, long long c, long long d) {
    return p.a == a && p.b == b && p.c == c && p.d == d;
}

}  // namespace

TEST_CASE("constructor validates length and residue ranges") {
    CHECK_THROWS_AS(BinaryDelSubCode(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryDelSubCode(8, {25, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryDelSubCode(8, {0, 193, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryDelSubCode(8, {0, 0, 1537, 0}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryDelSubCode(8, {0, 0, 0, 5}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryDelSubCode(8, {-1, 0, 0, 0}), std::invalid_argument);
    CHECK_NOTHROW(BinaryDelSubCode(8, {24, 192, 1536, 4}));
}

TEST_CASE("moduli grow as 3n+1, 3n^2+1, 3n^3+1, 5") {
    BinaryDelSubCode code(8, {});
    auto mods = code.moduli();
    CHECK(mods[0] == 25);
    CHECK(mods[1] == 193);
    CHECK(mods[2] == 1537);
    CHECK(mods[3] == 5);

    auto mods12 = BinaryDelSubCode(12, {}).moduli();
    CHECK(mods12[0] == 37);
    CHECK(mods12[1] == 433);
    CHECK(mods12[2] == 5185);
    CHECK(mods12[3] == 5);
}

TEST_CASE("syndromes of the all-ones word") {
    BinaryDelSubCode code(8, {});
    auto s = code.syndromes(Word::parse("11111111", 2));
    // Raw sums 36, 120, 540 and 8 before reduction.
    CHECK(s[0] == 11);
    CHECK(s[1] == 120);
    CHECK(s[2] == 540);
    CHECK(s[3] == 3);
    CHECK_FALSE(code.contains(Word::parse("11111111", 2)));
    CHECK(code.contains(Word::parse("00000000", 2)));

    CHECK_THROWS_AS(code.syndromes(Word::parse("0000000", 2)), std::invalid_argument);
    CHECK_THROWS_AS(code.syndromes(Word::parse("00000000", 3)), std::invalid_argument);
}

TEST_CASE("all-zero word is a member exactly when every residue is zero") {
    for (std::size_t n : {4, 7, 10}) {
        Word zero(std::vector<uint8_t>(n, 0), 2);
        CHECK(BinaryDelSubCode(n, {}).contains(zero));
        CHECK_FALSE(BinaryDelSubCode(n, {1, 0, 0, 0}).contains(zero));
        CHECK_FALSE(BinaryDelSubCode(n, {0, 0, 0, 1}).contains(zero));
    }
}

TEST_CASE("membership agrees with the published congruence constraints") {
    BinaryDelSubCode code(10, {3, 17, 101, 2});
    auto cs = code.constraints();
    REQUIRE(cs.size() == 4);
    CHECK(cs[0].gamma == std::vector<long long>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(cs[1].gamma[2] == 6);
    CHECK(cs[2].gamma[3] == 30);
    CHECK(cs[3].gamma == std::vector<long long>(10, 1));
    for (const auto& v : oracle::all_words(2, 10)) {
        Word x = oracle::to_word(v, 2);
        bool all = true;
        for (const auto& c : cs) all = all && delsub::is_member(x, c);
        CHECK(code.contains(x) == all);
    }
}

TEST_CASE("enumerate matches a direct filter of the whole space") {
    BinaryDelSubCode code(8, {0, 0, 0, 0});
    auto words = code.enumerate();
    REQUIRE(words.size() == 1);
    CHECK(words[0].str() == "00000000");

    BinaryDelSubCode shifted(9, {4, 9, 30, 2});
    auto got = shifted.enumerate();
    std::vector<Word> expect;
    for (const auto& v : oracle::all_words(2, 9)) {
        Word x = oracle::to_word(v, 2);
        if (shifted.contains(x)) expect.push_back(x);
    }
    CHECK(got == expect);
    CHECK(std::is_sorted(got.begin(), got.end()));
}

TEST_CASE("enumerate honours the work budget") {
    BinaryDelSubCode code(12, {});
    delsub::Budget tiny(10);
    CHECK_THROWS_AS(code.enumerate(&tiny), delsub::BudgetExceeded);
}

TEST_CASE("parse_spec round-trips explicit residues and auto search") {
    auto code = BinaryDelSubCode::parse_spec("n=12;a=0;b=168;c=1080;d=1");
    CHECK(code.length() == 12);
    CHECK(same_params(code.params(), 0, 168, 1080, 1));

    auto automatic = BinaryDelSubCode::parse_spec("n=8;params=auto");
    CHECK(same_params(automatic.params(), 0, 0, 0, 0));

    CHECK_THROWS_AS(BinaryDelSubCode::parse_spec("a=0;b=0;c=0;d=0"), std::invalid_argument);
    CHECK_THROWS_AS(BinaryDelSubCode::parse_spec("n=8;a=0;b=0;c=0"), std::invalid_argument);
    CHECK_THROWS_AS(BinaryDelSubCode::parse_spec("n=8;params=auto;a=0"), std::invalid_argument);
    CHECK_THROWS_AS(BinaryDelSubCode::parse_spec("n=8;params=greedy"), std::invalid_argument);
    CHECK_THROWS_AS(BinaryDelSubCode::parse_spec("n=8;zz=1"), std::invalid_argument);
    CHECK_THROWS_AS(BinaryDelSubCode::parse_spec("n=8;abc"), std::invalid_argument);
}

TEST_CASE("parameter search fixtures") {
    auto [p8, c8] = delsub::best_binary_params(8);
    CHECK(same_params(p8, 0, 0, 0, 0));
    CHECK(c8 == 1);

    auto [p12, c12] = delsub::best_binary_params(12);
    CHECK(same_params(p12, 0, 168, 1080, 1));
    CHECK(c12 == 2);
    auto words12 = BinaryDelSubCode(12, p12).enumerate();
    REQUIRE(words12.size() == 2);
    CHECK(words12[0].str() == "011100100110");
    CHECK(words12[1].str() == "100110110001");

    auto [p13, c13] = delsub::best_binary_params(13);
    CHECK(same_params(p13, 0, 215, 1585, 0));
    CHECK(c13 == 2);

    auto [p14, c14] = delsub::best_binary_params(14);
    CHECK(same_params(p14, 0, 231, 1759, 1));
    CHECK(c14 == 3);
}

TEST_CASE("search count equals the enumerated code size") {
    for (std::size_t n = 6; n <= 13; ++n) {
        auto [params, count] = delsub::best_binary_params(n);
        CHECK(BinaryDelSubCode(n, params).enumerate().size() == count);
    }
}

TEST_CASE("best bucket is at least the pigeonhole average") {
    for (std::size_t n = 10; n <= 16; ++n) {
        auto [params, count] = delsub::best_binary_params(n);
        auto mods = BinaryDelSubCode(n, params).moduli();
        unsigned __int128 buckets = 1;
        for (long long m : mods) buckets *= static_cast<unsigned __int128>(m);
        unsigned __int128 total = static_cast<unsigned __int128>(1) << n;
        CHECK(static_cast<unsigned __int128>(count) * buckets >= total);
    }
}

TEST_CASE("search is independent of thread count") {
    for (unsigned threads : {2u, 4u}) {
        auto [params, count] = delsub::best_binary_params(12, nullptr, threads);
        CHECK(same_params(params, 0, 168, 1080, 1));
        CHECK(count == 2);
    }
}

TEST_CASE("codewords keep pairwise Hamming distance at least 3") {
    for (std::size_t n = 6; n <= 13; ++n) {
        auto words = BinaryDelSubCode(n, delsub::best_binary_params(n).first).enumerate();
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = i + 1; j < words.size(); ++j) {
                std::size_t dist = 0;
                for (std::size_t k = 0; k < n; ++k)
                    if (words[i][k] != words[j][k]) ++dist;
                CHECK(dist >= 3);
            }
    }
}

TEST_CASE("deletion-substitution balls of the searched codes are disjoint") {
    for (std::size_t n = 6; n <= 13; ++n) {
        auto words = BinaryDelSubCode(n, delsub::best_binary_params(n).first).enumerate();
        auto cert = delsub::verify_code(words, delsub::BallSpec(1, 1));
        CHECK(cert.pass);
        CHECK_FALSE(cert.witness.has_value());
    }
}

TEST_CASE("ranked encoder round-trips and rejects outsiders") {
    auto codebook = BinaryDelSubCode::parse_spec("n=12;params=auto").enumerate();
    REQUIRE(codebook.size() == 2);
    for (uint64_t i = 0; i < codebook.size(); ++i) {
        Word w = delsub::encode_message(i, codebook);
        CHECK(delsub::codeword_rank(w, codebook) == i);
    }
    CHECK_THROWS_AS(delsub::encode_message(2, codebook), std::out_of_range);
    CHECK_THROWS_AS(delsub::codeword_rank(Word::parse("000000000000", 2), codebook),
                    std::invalid_argument);
}

TEST_CASE("decoder recovers from one deletion plus at most one substitution") {
    BinaryDelSubCode code(12, {0, 168, 1080, 1});
    auto codebook = code.enumerate();
    REQUIRE(codebook.size() == 2);
    for (const Word& x : codebook) {
        for (std::size_t d = 1; d <= 12; ++d) {
            for (std::size_t e = 0; e <= 11; ++e) {
                Word received =
                    e == 0 ? delsub::apply_del_sub(x, d, std::nullopt, std::nullopt)
                           : delsub::apply_del_sub(x, d, e,
                                                   static_cast<uint8_t>(1 - x[e <= d - 1 ? e - 1 : e]));
                auto out = delsub::decode_binary(received, code);
                REQUIRE(out.status == delsub::DecodeStatus::decoded);
                REQUIRE(out.codeword.has_value());
                CHECK(*out.codeword == x);
                REQUIRE(out.inferred_errors.has_value());
                CHECK(delsub::apply_pattern(x, *out.inferred_errors) == received);
            }
        }
    }
}

TEST_CASE("decoder handles clean and substituted words of full length") {
    BinaryDelSubCode code(12, {0, 168, 1080, 1});
    for (const Word& x : code.enumerate()) {
        auto clean = delsub::decode_binary(x, code);
        REQUIRE(clean.status == delsub::DecodeStatus::decoded);
        CHECK(*clean.codeword == x);
        REQUIRE(clean.inferred_errors.has_value());
        CHECK(clean.inferred_errors->deleted_positions.empty());
        CHECK(clean.inferred_errors->substituted_positions.empty());

        for (std::size_t e = 0; e < 12; ++e) {
            auto v = x.symbols();
            v[e] ^= 1;
            auto out = delsub::decode_binary(Word(v, 2), code);
            REQUIRE(out.status == delsub::DecodeStatus::decoded);
            CHECK(*out.codeword == x);
            REQUIRE(out.inferred_errors.has_value());
            CHECK(out.inferred_errors->substituted_positions.size() == 1);
        }
    }
}

TEST_CASE("decoder undoes one insertion with at most one substitution") {
    BinaryDelSubCode code(12, {0, 168, 1080, 1});
    for (const Word& x : code.enumerate()) {
        for (std::size_t pos = 0; pos <= 12; ++pos) {
            for (uint8_t bit = 0; bit <= 1; ++bit) {
                auto v = x.symbols();
                v.insert(v.begin() + static_cast<std::ptrdiff_t>(pos), bit);
                // Clean insertion, then insertion plus one flip elsewhere.
                auto out = delsub::decode_binary(Word(v, 2), code);
                REQUIRE(out.status == delsub::DecodeStatus::decoded);
                CHECK(*out.codeword == x);
                CHECK_FALSE(out.inferred_errors.has_value());

                auto flipped = v;
                flipped[(pos + 5) % flipped.size()] ^= 1;
                auto out2 = delsub::decode_binary(Word(flipped, 2), code);
                REQUIRE(out2.status == delsub::DecodeStatus::decoded);
                CHECK(*out2.codeword == x);
            }
        }
    }
}

TEST_CASE("decoder reports unreachable received words") {
    BinaryDelSubCode code(12, {0, 168, 1080, 1});
    auto out = delsub::decode_binary(Word::parse("00000000000", 2), code);
    CHECK(out.status == delsub::DecodeStatus::not_a_codeword_channel_output);
    CHECK_FALSE(out.codeword.has_value());
    CHECK(out.candidates.empty());

    BinaryDelSubCode zero8(8, {});
    auto out8 = delsub::decode_binary(Word::parse("1111111", 2), zero8);
    CHECK(out8.status == delsub::DecodeStatus::not_a_codeword_channel_output);
    auto ok8 = delsub::decode_binary(Word::parse("0000000", 2), zero8);
    CHECK(ok8.status == delsub::DecodeStatus::decoded);
    CHECK(ok8.codeword->str() == "00000000");
}

TEST_CASE("decoder rejects unusable received lengths and alphabets") {
    BinaryDelSubCode code(12, {0, 168, 1080, 1});
    CHECK_THROWS_AS(delsub::decode_binary(Word::parse("0000000000", 2), code),
                    std::invalid_argument);
    CHECK_THROWS_AS(delsub::decode_binary(Word::parse("00000000000000", 2), code),
                    std::invalid_argument);
    CHECK_THROWS_AS(delsub::decode_binary(Word::parse("00000000000", 3), code),
                    std::invalid_argument);
}

TEST_CASE("decoder never misdecodes across the whole received space at modest length") {
    // Every word of length n-1 either decodes to the unique codeword whose
    // ball contains it or is reported as unreachable.
    const std::size_t n = 12;
    BinaryDelSubCode code(n, {0, 168, 1080, 1});
    auto codebook = code.enumerate();
    std::vector<std::pair<Word, Word>> reachable;
    for (const Word& x : codebook)
        for (const auto& z : delsub::ball_del_sub(x, delsub::BallSpec(1, 1)))
            reachable.emplace_back(z, x);
    for (const auto& v : oracle::all_words(2, n - 1)) {
        Word z = oracle::to_word(v, 2);
        const Word* owner = nullptr;
        for (const auto& [ball_word, x] : reachable)
            if (ball_word == z) owner = &x;
        auto out = delsub::decode_binary(z, code);
        if (owner) {
            REQUIRE(out.status == delsub::DecodeStatus::decoded);
            CHECK(*out.codeword == *owner);
        } else {
            CHECK(out.status == delsub::DecodeStatus::not_a_codeword_channel_output);
        }
    }
}
