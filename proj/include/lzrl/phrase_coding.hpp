#pragma once

#include <cstdint>

#include "lzrl/codec.hpp"
#include "lzrl/parsing.hpp"

namespace lzrl {

// Nonclassical phrases carry a one-bit discriminator: 0 = literal, 1 = reference.
inline constexpr bool kTagLiteral = false;
inline constexpr bool kTagReference = true;

inline std::uint64_t phrase_cost(const Phrase& f, const CostModel& m) {
    switch (f.kind) {
        case PhraseKind::classical_triple:
            return code_length(m.distance_codec, f.d) + code_length(m.length_codec, f.ell) +
                   code_length(m.letter_codec, f.c);
        case PhraseKind::nc_literal:
            return 1 + code_length(m.letter_codec, f.c);
        case PhraseKind::nc_reference:
            return 1 + code_length(m.distance_codec, f.d) + code_length(m.length_codec, f.ell);
    }
    throw InvalidParams("unknown phrase kind");
}

inline std::uint64_t parsing_cost(const Parsing& p, const CostModel& m) {
    std::uint64_t total = 0;
    for (const Phrase& f : p.phrases) total += phrase_cost(f, m);
    return total;
}

/// Serializes a parsing as the concatenation e_d(d) e_l(ell) e_c(c) per phrase
/// (classical), or tag-prefixed literal/reference records (nonclassical).
inline BitString encode_parsing(const Parsing& p, const CostModel& m) {
    BitString out;
    for (const Phrase& f : p.phrases) {
        switch (f.kind) {
            case PhraseKind::classical_triple:
                append_int(out, m.distance_codec, f.d);
                append_int(out, m.length_codec, f.ell);
                append_int(out, m.letter_codec, f.c);
                break;
            case PhraseKind::nc_literal:
                out.push_back(kTagLiteral);
                append_int(out, m.letter_codec, f.c);
                break;
            case PhraseKind::nc_reference:
                out.push_back(kTagReference);
                append_int(out, m.distance_codec, f.d);
                append_int(out, m.length_codec, f.ell);
                break;
        }
    }
    return out;
}

/// Inverse of encode_parsing. The phrase count is not self-delimiting in the
/// bit payload; the container format supplies it.
inline Parsing decode_parsing(const BitString& bits, const CostModel& m, std::uint64_t z) {
    Parsing p;
    p.variant = m.variant;
    p.phrases.reserve(static_cast<std::size_t>(z));
    BitReader in(bits);
    for (std::uint64_t i = 0; i < z; ++i) {
        Phrase f;
        if (m.variant == Variant::classical) {
            f.kind = PhraseKind::classical_triple;
            f.d = read_int(m.distance_codec, in);
            f.ell = read_int(m.length_codec, in);
            f.c = static_cast<Letter>(read_int(m.letter_codec, in));
        } else {
            if (in.read_bit() == kTagReference) {
                f.kind = PhraseKind::nc_reference;
                f.d = read_int(m.distance_codec, in);
                f.ell = read_int(m.length_codec, in);
            } else {
                f.kind = PhraseKind::nc_literal;
                f.ell = 1;
                f.c = static_cast<Letter>(read_int(m.letter_codec, in));
            }
        }
        p.phrases.push_back(f);
    }
    return p;
}

}  // namespace lzrl
