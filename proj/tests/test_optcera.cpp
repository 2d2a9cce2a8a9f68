#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "cera/code.hpp"
#include "cera/optcera.hpp"
#include "cera/rng.hpp"

using namespace cera;

TEST_CASE("q-ary digit decomposition") {
    const QaryDigits d9 = qary_digits(9, 8, 2);
    CHECK(format_symbols(d9.digits, 8) == "11");
    CHECK(format_symbols(qary_digits(0, 8, 2).digits, 8) == "00");
    CHECK(format_symbols(qary_digits(15, 8, 2).digits, 8) == "17");
    CHECK(qary_value(d9) == 9);

    CHECK_THROWS_AS(qary_digits(64, 8, 2), std::invalid_argument);
    CHECK_THROWS_AS(qary_digits(-1, 8, 2), std::invalid_argument);
}

TEST_CASE("prefix-sum mapping reproduces the published rows") {
    CHECK(format_word(map_digits_to_codeword(qary_digits(9, 8, 2)), 8) == "21");
    CHECK(format_word(map_digits_to_codeword(qary_digits(15, 8, 2)), 8) == "07");
    CHECK(format_word(map_digits_to_codeword(qary_digits(0, 8, 2)), 8) == "00");
    CHECK(format_word(map_digits_to_codeword(qary_digits(8, 8, 2)), 8) == "10");
}

TEST_CASE("mapping is a bijection with first-difference inverse") {
    struct Shape {
        int q, n;
    };
    for (const Shape s : {Shape{2, 2}, {8, 2}, {64, 2}, {4, 3}, {16, 3}, {2, 12}}) {
        std::int64_t total = 1;
        for (int i = 0; i < s.n; ++i) total *= s.q;
        REQUIRE(total <= 4096);
        std::vector<Codeword> image;
        image.reserve(static_cast<std::size_t>(total));
        for (std::int64_t t = 0; t < total; ++t) {
            const QaryDigits d = qary_digits(t, s.q, s.n);
            const Codeword w = map_digits_to_codeword(d);
            CHECK(qary_value(digits_from_codeword(w, s.q)) == t);
            image.push_back(w);
        }
        std::sort(image.begin(), image.end());
        CHECK(std::adjacent_find(image.begin(), image.end()) == image.end());
        std::vector<Codeword> everything = all_words(s.n, s.q);
        std::sort(everything.begin(), everything.end());
        CHECK(image == everything);
    }
}

TEST_CASE("constructed code matches the published table") {
    const Code two_blocks = build_optcera_code(2, 8, 2);
    const char* expected[] = {"00", "11", "22", "33", "44", "55", "66", "77",
                              "10", "21", "32", "43", "54", "65", "76", "07"};
    REQUIRE(two_blocks.words.size() == 16);
    for (std::size_t t = 0; t < 16; ++t)
        CHECK(format_word(two_blocks.words[t], 8) == expected[t]);

    const Code one_block = build_optcera_code(2, 8, 1);
    REQUIRE(one_block.words.size() == 8);
    for (std::size_t t = 0; t < 8; ++t)
        CHECK(format_word(one_block.words[t], 8) == expected[t]);

    const Code identity = build_optcera_code(1, 4, 1);
    REQUIRE(identity.words.size() == 4);
    for (std::size_t t = 0; t < 4; ++t) CHECK(identity.words[t].coords[0] == t);
}

TEST_CASE("constructed codes are uniform over every feasible grid point") {
    for (const int n : {2, 3})
        for (const int q : {4, 8, 64}) {
            std::int64_t k_cap = 1;
            for (int i = 1; i < n; ++i) k_cap *= q;
            for (int k = 1; k <= 8; ++k) {
                if (k > k_cap) {
                    CHECK_THROWS_AS(build_optcera_code(n, q, k), std::invalid_argument);
                    continue;
                }
                const Code c = build_optcera_code(n, q, k);
                CHECK(c.params.M == static_cast<std::int64_t>(k) * q);
                CHECK(c.params.r == q);
                CHECK(is_mad(c));
                CHECK(std::fabs(avg_distance_via_distribution(c) - mad_upper_bound(n, q)) <=
                      1e-12);
            }
        }
    CHECK_THROWS_AS(build_optcera_code(2, 8, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_optcera_code(2, 8, 9), std::invalid_argument);
}

TEST_CASE("multipreamble code is the full product over allowed preambles") {
    const Code tiny = build_multipreamble_code(2, 2, 8);
    REQUIRE(tiny.words.size() == 4);
    CHECK(format_word(tiny.words[0], 8) == "00");
    CHECK(format_word(tiny.words[1], 8) == "01");
    CHECK(format_word(tiny.words[2], 8) == "10");
    CHECK(format_word(tiny.words[3], 8) == "11");

    const Code full = build_multipreamble_code(2, 8, 8);
    CHECK(full.words.size() == 64);
    CHECK(is_mad(full));

    const Code fig = build_multipreamble_code(2, 4, 8);
    CHECK(fig.words.size() == 16);
    for (const Codeword& w : fig.words)
        for (Symbol s : w.coords) CHECK(s < 4);
    // p_ij = 1/a on used symbols, 0 beyond
    for (const auto& row : fig.symbol_counts)
        for (std::size_t j = 0; j < row.size(); ++j)
            CHECK(row[j] == (j < 4 ? fig.params.M / 4 : 0));

    CHECK_THROWS_AS(build_multipreamble_code(2, 9, 8), std::invalid_argument);
}

TEST_CASE("random encoding is deterministic under a fixed seed") {
    const Code c = build_optcera_code(2, 8, 2);
    std::mt19937_64 a(42), b(42);
    const PreambleSchedule first = encode_random(c, a);
    const PreambleSchedule second = encode_random(c, b);
    CHECK(first.codeword_index == second.codeword_index);
    CHECK(first.per_subframe == second.per_subframe);
    CHECK(first.per_subframe ==
          c.words[static_cast<std::size_t>(first.codeword_index)].coords);
}

TEST_CASE("random encoding draws uniformly") {
    const Code c = build_optcera_code(2, 8, 2);
    std::mt19937_64 rng(123);
    const int draws = 100000;
    std::map<std::int64_t, int> freq;
    for (int i = 0; i < draws; ++i) ++freq[encode_random(c, rng).codeword_index];
    const double p = 1.0 / static_cast<double>(c.params.M);
    const double sigma = std::sqrt(draws * p * (1.0 - p));
    for (std::int64_t t = 0; t < c.params.M; ++t) {
        const double deviation = std::fabs(freq[t] - draws * p);
        CHECK(deviation <= 5.0 * sigma);
    }
}

TEST_CASE("single-codeword code always encodes index zero") {
    const Code c = make_code(2, 4, 4, {word_from_compact("12")});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 32; ++i) CHECK(encode_random(c, rng).codeword_index == 0);
}
