#pragma once

#include <cstdint>
#include <vector>

#include "lzrl/occurrence.hpp"
#include "lzrl/parsing.hpp"
#include "lzrl/text.hpp"

namespace lzrl {

namespace detail {

// Rightmost-occurrence strategy: few queries on a long text are cheaper per
// KMP scan; many queries amortize the rank-select structures.
inline bool prefer_kmp(std::size_t queries, std::size_t n) {
    return static_cast<std::uint64_t>(queries) * n <= (std::uint64_t(1) << 32);
}

inline std::int64_t rightmost(const OccurrenceIndex& idx, const Text& s, std::size_t p,
                              std::size_t len, bool use_kmp) {
    return use_kmp ? detail::rightmost_by_kmp(s.letters(), p, len, p - 1)
                   : idx.rightmost_occurrence(p, len);
}

}  // namespace detail

/// Longest copyable prefix at each position plus the rightmost source for it.
/// Entry i is (L, j): L maximal with s[i..i+L-1] occurring at some j < i,
/// j the rightmost such start (-1 when L = 0).
inline std::vector<std::pair<std::int64_t, std::int64_t>> longest_previous_factor(const Text& s) {
    OccurrenceIndex idx(s);
    const auto& lpf = idx.lpf();
    std::vector<std::pair<std::int64_t, std::int64_t>> out(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) {
        std::int64_t L = lpf[i];
        out[i] = {L, L == 0 ? -1 : idx.rightmost_occurrence(i, static_cast<std::size_t>(L))};
    }
    return out;
}

/// Greedy parsing: each phrase takes the longest copyable prefix plus one
/// explicit letter; distances are already minimized (rightmost source).
inline Parsing greedy_parse_classical(const Text& s) {
    const std::size_t n = s.n();
    OccurrenceIndex idx(s);
    const auto& lpf = idx.lpf();

    Parsing p;
    p.variant = Variant::classical;
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t ell = std::min<std::size_t>(lpf[pos] + 1, n - pos);
        Phrase f;
        f.kind = PhraseKind::classical_triple;
        f.ell = ell;
        f.c = s[pos + ell - 1];
        p.phrases.push_back(f);
        pos += ell;
    }

    const bool use_kmp = detail::prefer_kmp(p.z(), n);
    pos = 0;
    for (Phrase& f : p.phrases) {
        if (f.ell > 1) {
            std::int64_t j = detail::rightmost(idx, s, pos, f.ell - 1, use_kmp);
            f.d = static_cast<std::uint64_t>(static_cast<std::int64_t>(pos) - j - 1);
        }
        pos += f.ell;
    }
    return p;
}

/// Greedy nonclassical parsing: the longest whole phrase with an earlier
/// occurrence, or a literal when none exists.
inline Parsing greedy_parse_nonclassical(const Text& s) {
    const std::size_t n = s.n();
    OccurrenceIndex idx(s);
    const auto& lpf = idx.lpf();

    Parsing p;
    p.variant = Variant::nonclassical;
    std::size_t pos = 0;
    while (pos < n) {
        Phrase f;
        if (lpf[pos] == 0) {
            f.kind = PhraseKind::nc_literal;
            f.ell = 1;
            f.c = s[pos];
        } else {
            f.kind = PhraseKind::nc_reference;
            f.ell = static_cast<std::uint64_t>(lpf[pos]);
        }
        p.phrases.push_back(f);
        pos += f.ell;
    }

    const bool use_kmp = detail::prefer_kmp(p.z(), n);
    pos = 0;
    for (Phrase& f : p.phrases) {
        if (f.kind == PhraseKind::nc_reference) {
            std::int64_t j = detail::rightmost(idx, s, pos, f.ell, use_kmp);
            f.d = static_cast<std::uint64_t>(static_cast<std::int64_t>(pos) - j - 1);
        }
        pos += f.ell;
    }
    return p;
}

/// Same boundaries, each reference re-pointed at its rightmost valid source.
inline Parsing minimize_distances(const Text& s, const Parsing& p) {
    if (auto v = validate_parsing(s, p))
        throw InvalidParsing("phrase " + std::to_string(v->phrase_index) + ": " + v->reason);

    Parsing out = p;
    const bool use_kmp = detail::prefer_kmp(out.z(), s.n());
    OccurrenceIndex idx(s);
    std::size_t pos = 0;
    for (Phrase& f : out.phrases) {
        std::size_t copied =
            f.kind == PhraseKind::classical_triple ? f.ell - 1 : (f.kind == PhraseKind::nc_reference ? f.ell : 0);
        if (copied > 0) {
            std::int64_t j = detail::rightmost(idx, s, pos, copied, use_kmp);
            f.d = static_cast<std::uint64_t>(static_cast<std::int64_t>(pos) - j - 1);
        }
        pos += f.ell;
    }
    return out;
}

/// Phrase blueprint: boundaries and kinds only; distances get filled in with
/// the rightmost valid source and explicit letters are taken from the text.
struct Segment {
    std::uint64_t ell;
    PhraseKind kind;
};

inline Parsing build_parsing(const Text& s, const std::vector<Segment>& segments,
                             Variant variant) {
    Parsing p;
    p.variant = variant;
    p.phrases.reserve(segments.size());

    OccurrenceIndex idx(s);
    const bool use_kmp = detail::prefer_kmp(segments.size(), s.n());
    std::size_t pos = 0;
    for (const Segment& seg : segments) {
        Phrase f;
        f.ell = seg.ell;
        f.kind = seg.kind;
        switch (seg.kind) {
            case PhraseKind::classical_triple: {
                f.c = s[pos + seg.ell - 1];
                if (seg.ell > 1) {
                    std::int64_t j = detail::rightmost(idx, s, pos, seg.ell - 1, use_kmp);
                    if (j < 0)
                        throw InvalidParsing("copied part has no earlier occurrence at position " +
                                             std::to_string(pos));
                    f.d = static_cast<std::uint64_t>(static_cast<std::int64_t>(pos) - j - 1);
                }
                break;
            }
            case PhraseKind::nc_literal:
                f.c = s[pos];
                break;
            case PhraseKind::nc_reference: {
                std::int64_t j = detail::rightmost(idx, s, pos, seg.ell, use_kmp);
                if (j < 0)
                    throw InvalidParsing("referenced string has no earlier occurrence at position " +
                                         std::to_string(pos));
                f.d = static_cast<std::uint64_t>(static_cast<std::int64_t>(pos) - j - 1);
                break;
            }
        }
        p.phrases.push_back(f);
        pos += f.ell;
    }
    if (pos != s.n()) throw InvalidParsing("segments do not cover the text");
    return p;
}

}  // namespace lzrl
