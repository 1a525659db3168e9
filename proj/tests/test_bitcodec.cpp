#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <string>

#include "helpers.hpp"
#include "lzrl/codec.hpp"
#include "lzrl/parser.hpp"
#include "lzrl/phrase_coding.hpp"

using namespace lzrl;

namespace {

const Codec kCodecs[] = {Codec::elias_gamma, Codec::elias_delta, Codec::levenshtein};

// Reference Levenshtein construction, written recursively from the published
// definition: prepend the binary payload (leading 1 stripped), recurse on its
// length, finish with the unary step count and its terminating 0.
std::string ref_levenshtein(std::uint64_t v) {
    if (v == 0) return "0";
    std::string payloads;
    unsigned steps = 0;
    std::uint64_t m = v;
    while (true) {
        ++steps;
        std::string bin;
        for (std::uint64_t x = m; x > 0; x >>= 1) bin.insert(bin.begin(), char('0' + (x & 1)));
        bin.erase(bin.begin());  // drop the leading 1
        payloads = bin + payloads;
        if (bin.empty()) break;
        m = bin.size();
    }
    return std::string(steps, '1') + "0" + payloads;
}

}  // namespace

TEST_CASE("gamma codewords match the definition") {
    CHECK(encode_int(Codec::elias_gamma, 0).to_string() == "1");
    CHECK(encode_int(Codec::elias_gamma, 4).to_string() == "00101");
    CHECK(encode_int(Codec::elias_gamma, 1).to_string() == "010");
    CHECK(encode_int(Codec::elias_gamma, 2).to_string() == "011");
}

TEST_CASE("delta codewords match the definition") {
    CHECK(encode_int(Codec::elias_delta, 0).to_string() == "1");
    // delta of 17: gamma(5) then the 4 low bits of 17
    CHECK(encode_int(Codec::elias_delta, 16).to_string() == "001010001");
    CHECK(code_length(Codec::elias_delta, 16) == 9);
}

TEST_CASE("levenshtein codewords match the reference construction") {
    for (std::uint64_t x = 0; x < 4096; ++x) {
        CAPTURE(x);
        REQUIRE(encode_int(Codec::levenshtein, x).to_string() == ref_levenshtein(x + 1));
    }
    // a few fixed points of the classical code
    CHECK(ref_levenshtein(1) == "10");
    CHECK(ref_levenshtein(2) == "1100");
    CHECK(ref_levenshtein(4) == "1110000");
    CHECK(encode_int(Codec::levenshtein, 0).to_string() == "10");
}

TEST_CASE("decode inverts encode with arbitrary tail data") {
    BitString bits = encode_int(Codec::elias_gamma, 4);
    BitString tail = BitString::from_string("1");
    BitString joined = bits;
    joined.append(tail);
    auto [value, next] = decode_int(Codec::elias_gamma, joined, 0);
    CHECK(value == 4);
    CHECK(next == 5);

    auto [v0, n0] = decode_int(Codec::elias_gamma, BitString::from_string("1"), 0);
    CHECK(v0 == 0);
    CHECK(n0 == 1);
}

TEST_CASE("decode errors") {
    CHECK_THROWS_AS(decode_int(Codec::elias_gamma, BitString::from_string("00"), 0),
                    TruncatedCodeword);
    CHECK_THROWS_AS(decode_int(Codec::elias_delta, BitString::from_string("001"), 0),
                    TruncatedCodeword);
    CHECK_THROWS_AS(decode_int(Codec::levenshtein, BitString::from_string("11"), 0),
                    TruncatedCodeword);
    // a levenshtein stream starting with 0 decodes to the classical value 0,
    // which the shifted encoder never emits
    CHECK_THROWS_AS(decode_int(Codec::levenshtein, BitString::from_string("01"), 0),
                    MalformedCodeword);
}

TEST_CASE("round-trip over the full test range") {
    for (Codec c : kCodecs) {
        for (std::uint64_t x = 0; x <= 1000000; ++x) {
            BitString bits = encode_int(c, x);
            auto [value, next] = decode_int(c, bits, 0);
            if (value != x || next != bits.size()) {
                CAPTURE(codec_name(c), x);
                REQUIRE(value == x);
                REQUIRE(next == bits.size());
            }
        }
    }
    SUCCEED();
}

TEST_CASE("prefix-freeness on [0..2^14]") {
    for (Codec c : kCodecs) {
        std::set<std::string> words;
        for (std::uint64_t x = 0; x <= (1u << 14); ++x)
            words.insert(encode_int(c, x).to_string());
        REQUIRE(words.size() == (1u << 14) + 1);
        for (const std::string& w : words) {
            for (std::size_t l = 1; l < w.size(); ++l) {
                if (words.count(w.substr(0, l))) {
                    CAPTURE(codec_name(c), w, l);
                    FAIL("proper prefix of a codeword is itself a codeword");
                }
            }
        }
    }
    SUCCEED();
}

TEST_CASE("codeword length is monotone and within the log envelope") {
    for (Codec c : kCodecs) {
        std::uint64_t prev = 0;
        for (std::uint64_t x = 0; x <= 1000000; ++x) {
            std::uint64_t len = code_length(c, x);
            if (len < prev) {
                CAPTURE(codec_name(c), x);
                REQUIRE(len >= prev);
            }
            prev = len;
            double lo = std::floor(std::log2(double(x + 1))) + 1;
            double hi = 4 * std::log2(double(x + 2)) + 4;
            if (len < lo || len > hi) {
                CAPTURE(codec_name(c), x, len);
                REQUIRE(double(len) >= lo);
                REQUIRE(double(len) <= hi);
            }
        }
    }
    SUCCEED();
}

TEST_CASE("code_length agrees with materialized bits; gamma has its closed form") {
    for (Codec c : kCodecs)
        for (std::uint64_t x = 0; x < 70000; ++x)
            if (code_length(c, x) != encode_int(c, x).size()) {
                CAPTURE(codec_name(c), x);
                REQUIRE(code_length(c, x) == encode_int(c, x).size());
            }
    for (std::uint64_t x = 0; x < 70000; ++x) {
        std::uint64_t expect = 2 * std::uint64_t(std::floor(std::log2(double(x + 1)))) + 1;
        REQUIRE(code_length(Codec::elias_gamma, x) == expect);
    }
}

TEST_CASE("encode_parsing unrolls the phrase serialization") {
    CostModel m = CostModel::all(Codec::elias_gamma);

    SECTION("single phrase") {
        Parsing p;
        p.phrases.push_back(Phrase{0, 1, 0, PhraseKind::classical_triple});
        BitString expect;
        append_int(expect, m.distance_codec, 0);
        append_int(expect, m.length_codec, 1);
        append_int(expect, m.letter_codec, 0);
        CHECK(encode_parsing(p, m) == expect);
    }

    SECTION("empty parsing") {
        Parsing p;
        CHECK(encode_parsing(p, m).empty());
    }

    SECTION("greedy parsing of abababbbaba") {
        Text s = testutil::text_of("abababbbaba");
        Parsing g = greedy_parse_classical(s);
        REQUIRE(g.z() == 4);
        std::uint64_t sum = 0;
        for (const Phrase& f : g.phrases)
            sum += code_length(m.distance_codec, f.d) + code_length(m.length_codec, f.ell) +
                   code_length(m.letter_codec, f.c);
        CHECK(encode_parsing(g, m).size() == sum);
        CHECK(encode_parsing(g, m).size() == 34);
    }
}

TEST_CASE("decode_parsing inverts encode_parsing") {
    testutil::Rng rng(20260810);
    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t n = 1 + rng.below(200);
        std::size_t sigma = 1 + rng.below(8);
        Text s = testutil::random_text(rng, n, sigma);
        CostModel m{kCodecs[rng.below(3)], kCodecs[rng.below(3)], kCodecs[rng.below(3)],
                    iter % 2 ? Variant::nonclassical : Variant::classical};
        Parsing p = m.variant == Variant::classical ? greedy_parse_classical(s)
                                                    : greedy_parse_nonclassical(s);
        BitString bits = encode_parsing(p, m);
        Parsing q = decode_parsing(bits, m, p.z());
        if (!(q.phrases == p.phrases)) {
            CAPTURE(iter, n, sigma);
            REQUIRE(q.phrases == p.phrases);
        }
        REQUIRE(reconstruct(q) == s);
    }
    SUCCEED();
}

TEST_CASE("decode_parsing reports truncation") {
    Text s = testutil::text_of("abababbbaba");
    CostModel m = CostModel::all(Codec::elias_gamma);
    Parsing p = greedy_parse_classical(s);
    BitString bits = encode_parsing(p, m);
    BitString cut;
    for (std::size_t i = 0; i + 1 < bits.size(); ++i) cut.push_back(bits[i]);
    CHECK_THROWS_AS(decode_parsing(cut, m, p.z()), TruncatedCodeword);
}

TEST_CASE("bitstring concatenation is associative with the empty identity") {
    testutil::Rng rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        auto rand_bits = [&rng]() {
            BitString b;
            std::size_t len = rng.below(24);
            for (std::size_t i = 0; i < len; ++i) b.push_back(rng.below(2));
            return b;
        };
        BitString a = rand_bits(), b = rand_bits(), c = rand_bits();
        BitString ab = a;
        ab.append(b);
        BitString ab_c = ab;
        ab_c.append(c);
        BitString bc = b;
        bc.append(c);
        BitString a_bc = a;
        a_bc.append(bc);
        REQUIRE(ab_c == a_bc);
        BitString e;
        BitString ae = a;
        ae.append(e);
        REQUIRE(ae == a);
        BitString ea = e;
        ea.append(a);
        REQUIRE(ea == a);
    }
    SUCCEED();
}
