#pragma once

#include <bit>
#include <cstdint>
#include <utility>

#include "lzrl/bitstream.hpp"
#include "lzrl/errors.hpp"

namespace lzrl {

enum class Codec : std::uint8_t {
    elias_gamma = 0,
    elias_delta = 1,
    levenshtein = 2,
};

inline const char* codec_name(Codec c) {
    switch (c) {
        case Codec::elias_gamma: return "gamma";
        case Codec::elias_delta: return "delta";
        case Codec::levenshtein: return "levenshtein";
    }
    return "?";
}

namespace detail {

// Number of bits in the binary representation of v >= 1.
inline unsigned bits_of(std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v)); }

inline void gamma_append(BitString& out, std::uint64_t v) {
    unsigned nb = bits_of(v);           // v >= 1
    for (unsigned i = 1; i < nb; ++i) out.push_back(false);
    out.append_bits(v, nb);
}

inline std::uint64_t gamma_read(BitReader& in) {
    unsigned zeros = 0;
    while (!in.read_bit()) ++zeros;
    std::uint64_t v = 1;
    for (unsigned i = 0; i < zeros; ++i) v = (v << 1) | (in.read_bit() ? 1u : 0u);
    return v;
}

inline void delta_append(BitString& out, std::uint64_t v) {
    unsigned nb = bits_of(v);
    gamma_append(out, nb);
    out.append_bits(v & ~(std::uint64_t(1) << (nb - 1)), nb - 1);
}

inline std::uint64_t delta_read(BitReader& in) {
    std::uint64_t nb = gamma_read(in);
    std::uint64_t v = 1;
    for (std::uint64_t i = 1; i < nb; ++i) v = (v << 1) | (in.read_bit() ? 1u : 0u);
    return v;
}

// Levenshtein code of v >= 0: C 1-bits counting the chain length, a 0, then
// the binary payloads (leading 1 stripped) from the innermost chain value
// out to v itself. C(0) is the single bit 0.
inline void lev_append(BitString& out, std::uint64_t v) {
    if (v == 0) {
        out.push_back(false);
        return;
    }
    std::uint64_t chain[8];
    unsigned depth = 0;
    std::uint64_t m = v;
    while (true) {
        chain[depth++] = m;
        unsigned payload = bits_of(m) - 1;
        if (payload == 0) break;
        m = payload;
    }
    for (unsigned i = 0; i < depth; ++i) out.push_back(true);
    out.push_back(false);
    for (unsigned i = depth; i-- > 0;) {
        unsigned payload = bits_of(chain[i]) - 1;
        out.append_bits(chain[i] & ~(std::uint64_t(1) << payload), payload);
    }
}

inline std::uint64_t lev_read(BitReader& in) {
    unsigned ones = 0;
    while (in.read_bit()) ++ones;
    if (ones == 0) return 0;
    std::uint64_t v = 1;
    for (unsigned step = 1; step < ones; ++step) {
        std::uint64_t nb = v;
        v = 1;
        for (std::uint64_t i = 0; i < nb; ++i) v = (v << 1) | (in.read_bit() ? 1u : 0u);
    }
    return v;
}

inline std::uint64_t gamma_length(std::uint64_t v) {
    return 2 * (bits_of(v) - 1) + 1;
}

inline std::uint64_t delta_length(std::uint64_t v) {
    unsigned nb = bits_of(v);
    return gamma_length(nb) + (nb - 1);
}

inline std::uint64_t lev_length(std::uint64_t v) {
    if (v == 0) return 1;
    std::uint64_t total = 1;  // terminating 0
    std::uint64_t m = v;
    while (true) {
        ++total;  // one 1-bit of the unary count
        unsigned payload = bits_of(m) - 1;
        total += payload;
        if (payload == 0) break;
        m = payload;
    }
    return total;
}

}  // namespace detail

/// Codeword for non-negative x: the classical positive-integer code of x+1.
inline void append_int(BitString& out, Codec c, std::uint64_t x) {
    switch (c) {
        case Codec::elias_gamma: detail::gamma_append(out, x + 1); return;
        case Codec::elias_delta: detail::delta_append(out, x + 1); return;
        case Codec::levenshtein: detail::lev_append(out, x + 1); return;
    }
    throw InvalidParams("unknown codec");
}

inline BitString encode_int(Codec c, std::uint64_t x) {
    BitString out;
    append_int(out, c, x);
    return out;
}

/// Reads one codeword; returns the decoded non-negative value and the offset
/// just past the codeword.
inline std::pair<std::uint64_t, std::size_t> decode_int(Codec c, const BitString& bits,
                                                        std::size_t offset = 0) {
    if (offset >= bits.size()) throw TruncatedCodeword();
    BitReader in(bits, offset);
    std::uint64_t v = 0;
    switch (c) {
        case Codec::elias_gamma: v = detail::gamma_read(in); break;
        case Codec::elias_delta: v = detail::delta_read(in); break;
        case Codec::levenshtein: v = detail::lev_read(in); break;
    }
    if (v == 0) throw MalformedCodeword();  // classical value 0 is never emitted
    return {v - 1, in.tell()};
}

inline std::uint64_t read_int(Codec c, BitReader& in) {
    std::uint64_t v = 0;
    switch (c) {
        case Codec::elias_gamma: v = detail::gamma_read(in); break;
        case Codec::elias_delta: v = detail::delta_read(in); break;
        case Codec::levenshtein: v = detail::lev_read(in); break;
    }
    if (v == 0) throw MalformedCodeword();
    return v - 1;
}

/// Codeword length in bits, without materializing the bits.
/// For elias_gamma this equals 2*floor(log2(x+1)) + 1.
inline std::uint64_t code_length(Codec c, std::uint64_t x) {
    switch (c) {
        case Codec::elias_gamma: return detail::gamma_length(x + 1);
        case Codec::elias_delta: return detail::delta_length(x + 1);
        case Codec::levenshtein: return detail::lev_length(x + 1);
    }
    throw InvalidParams("unknown codec");
}

enum class Variant : std::uint8_t {
    classical = 0,
    nonclassical = 1,
};

inline const char* variant_name(Variant v) {
    return v == Variant::classical ? "classical" : "nonclassical";
}

/// The fixed encoder triple for distances, lengths and letters.
struct CostModel {
    Codec distance_codec = Codec::elias_gamma;
    Codec length_codec = Codec::elias_gamma;
    Codec letter_codec = Codec::elias_gamma;
    Variant variant = Variant::classical;

    static CostModel all(Codec c, Variant v = Variant::classical) {
        return CostModel{c, c, c, v};
    }
};

}  // namespace lzrl
