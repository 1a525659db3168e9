#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"
#include "lzrl/affine_plane.hpp"
#include "lzrl/gf2k.hpp"
#include "lzrl/gray.hpp"

using namespace lzrl;

TEST_CASE("GF(2^k) field laws") {
    for (unsigned k : {1u, 2u, 4u}) {
        std::uint32_t q = 1u << k;
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(gf_add(k, a, a) == 0);  // characteristic 2
            CHECK(gf_mul(k, 1, a) == a);
            CHECK(gf_mul(k, a, 1) == a);
            for (std::uint32_t b = 0; b < q; ++b) {
                CHECK(gf_mul(k, a, b) == gf_mul(k, b, a));
                for (std::uint32_t c = 0; c < q; ++c) {
                    REQUIRE(gf_mul(k, a, gf_add(k, b, c)) ==
                            gf_add(k, gf_mul(k, a, b), gf_mul(k, a, c)));
                    REQUIRE(gf_mul(k, gf_mul(k, a, b), c) == gf_mul(k, a, gf_mul(k, b, c)));
                }
            }
        }
    }
}

TEST_CASE("GF(256) spot checks and invertibility") {
    CHECK(gf_mul(8, 0x53, 0xCA) == 0x01);  // classic inverse pair under 0x11B
    CHECK(gf_add(8, 0x57, 0x57) == 0);
    CHECK(gf_arith(8, GfOp::mul, 1, 0xAB) == 0xAB);
    // every nonzero element has an inverse
    testutil::Rng rng(8);
    for (int t = 0; t < 64; ++t) {
        std::uint32_t a = 1 + rng.below(255);
        bool found = false;
        for (std::uint32_t b = 1; b < 256; ++b)
            if (gf_mul(8, a, b) == 1) {
                found = true;
                break;
            }
        REQUIRE(found);
    }
    CHECK_THROWS_AS(gf_mul(3, 1, 1), InvalidParams);
}

TEST_CASE("affine planes satisfy the Steiner pair property") {
    SECTION("order 2 is the complete pair set") {
        AffinePlane p = affine_plane(2);
        REQUIRE(p.points() == 4);
        REQUIRE(p.lines.size() == 6);
        std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (const auto& line : p.lines) {
            REQUIRE(line.size() == 2);
            pairs.emplace(line[0], line[1]);
        }
        CHECK(pairs.size() == 6);
    }
    for (std::uint32_t q : {2u, 4u, 16u}) {
        AffinePlane p = affine_plane(q);
        REQUIRE(p.points() == q * q);
        REQUIRE(p.lines.size() == q * (q + 1));
        // line count formula: C(q^2,2) / C(q,2)
        std::uint64_t nn = std::uint64_t(q) * q;
        CHECK(p.lines.size() == (nn * (nn - 1) / 2) / (std::uint64_t(q) * (q - 1) / 2));
        std::vector<std::vector<std::uint32_t>> seen(q * q, std::vector<std::uint32_t>(q * q, 0));
        for (const auto& line : p.lines) {
            REQUIRE(line.size() == q);
            for (std::size_t a = 0; a < line.size(); ++a)
                for (std::size_t b = a + 1; b < line.size(); ++b) seen[line[a]][line[b]]++;
        }
        for (std::uint32_t a = 0; a < q * q; ++a)
            for (std::uint32_t b = a + 1; b < q * q; ++b) {
                if (seen[a][b] != 1) {
                    CAPTURE(q, a, b);
                    REQUIRE(seen[a][b] == 1);
                }
            }
    }
    SUCCEED();
}

TEST_CASE("affine plane of order 256 has the right shape") {
    AffinePlane p = affine_plane(256);
    REQUIRE(p.points() == 65536);
    REQUIRE(p.lines.size() == 256u * 257u);
    testutil::Rng rng(256);
    // sampled pair coverage
    for (int t = 0; t < 500; ++t) {
        std::uint32_t a = static_cast<std::uint32_t>(rng.below(65536));
        std::uint32_t b = static_cast<std::uint32_t>(rng.below(65536));
        if (a == b) continue;
        int count = 0;
        for (const auto& line : p.lines) {
            bool ha = std::binary_search(line.begin(), line.end(), a);
            bool hb = std::binary_search(line.begin(), line.end(), b);
            if (ha && hb) ++count;
        }
        REQUIRE(count == 1);
    }
    SUCCEED();
}

TEST_CASE("unsupported plane order") {
    CHECK_THROWS_AS(affine_plane(3), UnsupportedOrder);
    CHECK_THROWS_AS(affine_plane(8), UnsupportedOrder);
}

TEST_CASE("gray sequence examples") {
    SECTION("(2,2,0) reversed reflected code") {
        GrayCodeSeq seq = gray_sequence(2, 2, 0);
        REQUIRE(seq.words.size() == 4);
        CHECK(seq.words[0] == std::vector<std::uint32_t>{1, 0});
        CHECK(seq.words[1] == std::vector<std::uint32_t>{1, 1});
        CHECK(seq.words[2] == std::vector<std::uint32_t>{0, 1});
        CHECK(seq.words[3] == std::vector<std::uint32_t>{0, 0});
    }
    SECTION("(2,1,0)") {
        GrayCodeSeq seq = gray_sequence(2, 1, 0);
        REQUIRE(seq.words.size() == 2);
        CHECK(seq.words[0] == std::vector<std::uint32_t>{1});
        CHECK(seq.words[1] == std::vector<std::uint32_t>{0});
    }
}

TEST_CASE("gray sequence invariants across shapes") {
    struct Case {
        std::uint32_t tau, m, terminal;
    } cases[] = {{3, 2, 0}, {3, 2, 1}, {2, 5, 0}, {4, 3, 2}, {5, 3, 4}, {2, 10, 1}, {7, 2, 3}};
    for (auto [tau, m, terminal] : cases) {
        CAPTURE(tau, m, terminal);
        GrayCodeSeq seq = gray_sequence(tau, m, terminal);
        std::uint64_t count = 1;
        for (std::uint32_t t = 0; t < m; ++t) count *= tau;
        REQUIRE(seq.words.size() == count);

        std::set<std::vector<std::uint32_t>> distinct(seq.words.begin(), seq.words.end());
        REQUIRE(distinct.size() == count);  // all words distinct

        for (std::size_t i = 1; i < seq.words.size(); ++i) {
            unsigned diff = 0;
            for (std::uint32_t t = 0; t < m; ++t)
                if (seq.words[i - 1][t] != seq.words[i][t]) ++diff;
            REQUIRE(diff == 1);  // consecutive words differ in exactly one position
        }
        REQUIRE(seq.words.back() == std::vector<std::uint32_t>(m, terminal));

        for (std::uint64_t i = 1; i <= count; ++i)
            REQUIRE(gray_word(tau, m, terminal, i) == seq.words[i - 1]);
    }
    SUCCEED();
}
