#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lzrl/optimal.hpp"
#include "lzrl/parser.hpp"
#include "lzrl/suffix_array.hpp"

using namespace lzrl;

TEST_CASE("greedy parsing of the abababbbaba example") {
    Text s = testutil::text_of("abababbbaba");
    Parsing p = greedy_parse_classical(s);
    REQUIRE(p.z() == 4);
    CHECK(p.phrases[0].ell == 1);
    CHECK(p.phrases[1].ell == 1);
    CHECK(p.phrases[2].ell == 5);
    CHECK(p.phrases[3].ell == 4);
    CHECK(p.phrases[0].c == 0);  // a
    CHECK(p.phrases[1].c == 1);  // b
    CHECK(p.phrases[2].d == 1);  // abab copied from position 0
    CHECK(p.phrases[3].d == 3);  // bab copied from position 3
    CHECK_FALSE(validate_parsing(s, p).has_value());
    CHECK(reconstruct(p) == s);
}

TEST_CASE("greedy parsing of degenerate texts") {
    SECTION("single letter") {
        Text s({0});
        Parsing p = greedy_parse_classical(s);
        REQUIRE(p.z() == 1);
        CHECK(p.phrases[0] == Phrase{0, 1, 0, PhraseKind::classical_triple});
    }
    SECTION("aaaa self-referential copy") {
        Text s({0, 0, 0, 0});
        Parsing p = greedy_parse_classical(s);
        REQUIRE(p.z() == 2);
        CHECK(p.phrases[0] == Phrase{0, 1, 0, PhraseKind::classical_triple});
        CHECK(p.phrases[1] == Phrase{0, 3, 0, PhraseKind::classical_triple});
    }
    SECTION("empty text is rejected") {
        CHECK_THROWS_AS(Text(std::vector<Letter>{}), InvalidParams);
    }
}

TEST_CASE("greedy nonclassical examples") {
    SECTION("single letter") {
        Parsing p = greedy_parse_nonclassical(Text({0}));
        REQUIRE(p.z() == 1);
        CHECK(p.phrases[0].kind == PhraseKind::nc_literal);
    }
    SECTION("aaaa") {
        Parsing p = greedy_parse_nonclassical(Text({0, 0, 0, 0}));
        REQUIRE(p.z() == 2);
        CHECK(p.phrases[0].kind == PhraseKind::nc_literal);
        CHECK(p.phrases[1].kind == PhraseKind::nc_reference);
        CHECK(p.phrases[1].ell == 3);
        CHECK(p.phrases[1].d == 0);
    }
    SECTION("ab is two literals") {
        Parsing p = greedy_parse_nonclassical(testutil::text_of("ab"));
        REQUIRE(p.z() == 2);
        CHECK(p.phrases[0].kind == PhraseKind::nc_literal);
        CHECK(p.phrases[1].kind == PhraseKind::nc_literal);
    }
}

TEST_CASE("greedy matches the quadratic reference on random texts") {
    testutil::Rng rng(101);
    for (int iter = 0; iter < 400; ++iter) {
        std::size_t n = 1 + rng.below(120);
        std::size_t sigma = 1 + rng.below(iter % 3 == 0 ? 2 : 5);
        Text s = testutil::random_text(rng, n, sigma);
        Parsing fast = greedy_parse_classical(s);
        Parsing slow = testutil::naive_greedy_classical(s);
        if (!(fast.phrases == slow.phrases)) {
            CAPTURE(iter, n, sigma);
            REQUIRE(fast.phrases == slow.phrases);
        }
        Parsing fast_nc = greedy_parse_nonclassical(s);
        Parsing slow_nc = testutil::naive_greedy_nonclassical(s);
        if (!(fast_nc.phrases == slow_nc.phrases)) {
            CAPTURE(iter, n, sigma);
            REQUIRE(fast_nc.phrases == slow_nc.phrases);
        }
    }
    SUCCEED();
}

TEST_CASE("longest_previous_factor examples and oracle agreement") {
    SECTION("aaaa") {
        auto lpf = longest_previous_factor(Text({0, 0, 0, 0}));
        REQUIRE(lpf.size() == 4);
        CHECK(lpf[0] == std::pair<std::int64_t, std::int64_t>{0, -1});
        CHECK(lpf[1] == std::pair<std::int64_t, std::int64_t>{3, 0});
        CHECK(lpf[2] == std::pair<std::int64_t, std::int64_t>{2, 1});
        CHECK(lpf[3] == std::pair<std::int64_t, std::int64_t>{1, 2});
    }
    SECTION("all distinct letters") {
        auto lpf = longest_previous_factor(Text({0, 1, 2, 3}));
        for (auto [l, j] : lpf) {
            CHECK(l == 0);
            CHECK(j == -1);
        }
    }
    SECTION("abab") {
        auto lpf = longest_previous_factor(testutil::text_of("abab"));
        REQUIRE(lpf.size() == 4);
        CHECK(lpf[0].first == 0);
        CHECK(lpf[1].first == 0);
        CHECK(lpf[2] == std::pair<std::int64_t, std::int64_t>{2, 0});
        CHECK(lpf[3] == std::pair<std::int64_t, std::int64_t>{1, 1});
    }
    SECTION("random agreement with the quadratic scan") {
        testutil::Rng rng(2024);
        for (int iter = 0; iter < 200; ++iter) {
            std::size_t n = 1 + rng.below(100);
            Text s = testutil::random_text(rng, n, 1 + rng.below(4));
            auto fast = longest_previous_factor(s);
            auto slow = lpf_naive(s.letters());
            for (std::size_t i = 0; i < n; ++i) {
                if (fast[i].first != slow[i].first || fast[i].second != slow[i].second) {
                    CAPTURE(iter, i, n);
                    REQUIRE(fast[i].first == slow[i].first);
                    REQUIRE(fast[i].second == slow[i].second);
                }
            }
        }
        SUCCEED();
    }
}

TEST_CASE("suffix array machinery agrees with brute force") {
    testutil::Rng rng(5150);
    for (int iter = 0; iter < 150; ++iter) {
        std::size_t n = 1 + rng.below(80);
        Text s = testutil::random_text(rng, n, 1 + rng.below(4));
        auto sa = suffix_array(s.letters());
        std::vector<std::int32_t> naive(n);
        for (std::size_t i = 0; i < n; ++i) naive[i] = static_cast<std::int32_t>(i);
        const auto& t = s.letters();
        std::sort(naive.begin(), naive.end(), [&](std::int32_t a, std::int32_t b) {
            return std::lexicographical_compare(t.begin() + a, t.end(), t.begin() + b, t.end());
        });
        if (sa != naive) {
            CAPTURE(iter, n);
            REQUIRE(sa == naive);
        }
    }
    SUCCEED();
}

TEST_CASE("minimize_distances") {
    SECTION("greedy output is already minimal") {
        Text s = testutil::text_of("abababbbaba");
        Parsing g = greedy_parse_classical(s);
        Parsing m = minimize_distances(s, g);
        CHECK(m.phrases == g.phrases);
    }
    SECTION("suboptimal reference gets tightened") {
        Text s({0, 0, 0, 0});
        Parsing p;
        p.phrases.push_back(Phrase{0, 1, 0, PhraseKind::classical_triple});
        p.phrases.push_back(Phrase{0, 1, 0, PhraseKind::classical_triple});
        p.phrases.push_back(Phrase{1, 2, 0, PhraseKind::classical_triple});  // copies from pos 0
        REQUIRE_FALSE(validate_parsing(s, p).has_value());
        Parsing m = minimize_distances(s, p);
        CHECK(m.phrases[2].d == 0);  // rightmost valid source is pos 1
        CHECK_FALSE(validate_parsing(s, m).has_value());
    }
    SECTION("all-literal parsing unchanged") {
        Text s = testutil::text_of("abc");
        Parsing p;
        for (int i = 0; i < 3; ++i)
            p.phrases.push_back(Phrase{0, 1, static_cast<Letter>(i), PhraseKind::classical_triple});
        CHECK(minimize_distances(s, p).phrases == p.phrases);
    }
    SECTION("invalid parsing is rejected") {
        Text s = testutil::text_of("ab");
        Parsing p;
        p.phrases.push_back(Phrase{0, 2, 1, PhraseKind::classical_triple});
        CHECK_THROWS_AS(minimize_distances(s, p), InvalidParsing);
    }
    SECTION("rightmost is exact on random texts") {
        testutil::Rng rng(99);
        for (int iter = 0; iter < 120; ++iter) {
            std::size_t n = 2 + rng.below(iter % 4 == 0 ? 500 : 150);
            Text s = testutil::random_text(rng, n, 1 + rng.below(3));
            Parsing m = minimize_distances(s, greedy_parse_classical(s));
            std::size_t pos = 0;
            for (const Phrase& f : m.phrases) {
                if (f.ell > 1) {
                    std::int64_t want = testutil::naive_rightmost(s.letters(), pos, f.ell - 1);
                    std::int64_t got = static_cast<std::int64_t>(pos) - f.d - 1;
                    if (want != got) {
                        CAPTURE(iter, pos);
                        REQUIRE(want == got);
                    }
                }
                pos += f.ell;
            }
        }
        SUCCEED();
    }
}

TEST_CASE("validate_parsing catches tampering") {
    testutil::Rng rng(40);
    SECTION("random greedy outputs validate") {
        for (int iter = 0; iter < 300; ++iter) {
            std::size_t n = 1 + rng.below(150);
            Text s = testutil::random_text(rng, n, 1 + rng.below(6));
            REQUIRE_FALSE(validate_parsing(s, greedy_parse_classical(s)).has_value());
            REQUIRE_FALSE(validate_parsing(s, greedy_parse_nonclassical(s)).has_value());
        }
        SUCCEED();
    }
    SECTION("tampered distance is reported") {
        Text s = testutil::text_of("abcabd");
        Parsing g = greedy_parse_classical(s);
        bool found = false;
        for (std::size_t i = 0; i < g.z(); ++i) {
            if (g.phrases[i].ell > 1) {
                Parsing bad = g;
                bad.phrases[i].d += 1;
                auto v = validate_parsing(s, bad);
                if (v.has_value()) {
                    CHECK(v->phrase_index == i);
                    found = true;
                }
            }
        }
        CHECK(found);
    }
    SECTION("length sum mismatch is reported") {
        Text s = testutil::text_of("ab");
        Parsing p;
        p.phrases.push_back(Phrase{0, 1, 0, PhraseKind::classical_triple});
        auto v = validate_parsing(s, p);
        REQUIRE(v.has_value());
    }
}

TEST_CASE("reconstruct round-trips both variants on random texts") {
    testutil::Rng rng(777);
    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t n = 1 + rng.below(200);
        Text s = testutil::random_text(rng, n, 1 + rng.below(8));
        REQUIRE(reconstruct(greedy_parse_classical(s)) == s);
        REQUIRE(reconstruct(greedy_parse_nonclassical(s)) == s);
    }
    SUCCEED();
}

TEST_CASE("reconstruct rejects dangling references") {
    Parsing p;
    p.phrases.push_back(Phrase{0, 1, 0, PhraseKind::classical_triple});
    p.phrases.push_back(Phrase{5, 3, 0, PhraseKind::classical_triple});
    CHECK_THROWS_AS(reconstruct(p), DanglingReference);
}

TEST_CASE("indexed and streaming rightmost-occurrence queries agree") {
    testutil::Rng rng(64128);
    for (std::size_t n : {700u, 3000u}) {
        for (std::size_t sigma : {2u, 3u, 6u}) {
            Text s = testutil::random_text(rng, n, sigma);
            OccurrenceIndex idx(s);
            for (int q = 0; q < 1500; ++q) {
                std::size_t p = 1 + rng.below(n - 1);
                std::size_t len = 1 + rng.below(std::min<std::size_t>(n - p, 40));
                std::int64_t a = idx.rightmost_occurrence(p, len);
                std::int64_t b = idx.rightmost_occurrence_kmp(p, len);
                if (a != b) {
                    CAPTURE(n, sigma, p, len);
                    REQUIRE(a == b);
                }
            }
        }
    }
    SUCCEED();
}

TEST_CASE("minimize_distances keeps nonclassical parsings minimal") {
    testutil::Rng rng(31337);
    for (int iter = 0; iter < 80; ++iter) {
        std::size_t n = 2 + rng.below(200);
        Text s = testutil::random_text(rng, n, 1 + rng.below(3));
        Parsing g = greedy_parse_nonclassical(s);
        Parsing m = minimize_distances(s, g);
        REQUIRE(m.phrases == g.phrases);  // greedy already picks the rightmost source
    }
    SUCCEED();
}

TEST_CASE("greedy phrase count matches the unit-cost shortest path") {
    testutil::Rng rng(314159);
    std::size_t sigmas[] = {2, 4, 16};
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 1 + rng.below(250);
        Text s = testutil::random_text(rng, n, sigmas[iter % 3]);
        Parsing g = greedy_parse_classical(s);
        Parsing mp = min_phrase_parse(s);
        REQUIRE_FALSE(validate_parsing(s, mp).has_value());
        if (g.z() != mp.z()) {
            CAPTURE(iter, n);
            REQUIRE(g.z() == mp.z());
        }
    }
    SUCCEED();
}
