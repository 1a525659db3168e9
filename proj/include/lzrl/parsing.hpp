#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lzrl/codec.hpp"
#include "lzrl/errors.hpp"
#include "lzrl/text.hpp"

namespace lzrl {

enum class PhraseKind : std::uint8_t {
    classical_triple = 0,  // <d, ell, c>; copied part is the phrase minus its last letter
    nc_literal = 1,        // single letter
    nc_reference = 2,      // <d, ell>; the whole phrase occurs earlier
};

/// One factor. Distances follow d = (letters before the phrase) - 1 - (source
/// start), so d = 0 means the source begins at the immediately preceding
/// position. For one-letter classical phrases and literals d is stored as 0.
struct Phrase {
    std::uint64_t d = 0;
    std::uint64_t ell = 1;
    Letter c = 0;  // last letter (classical) or the literal; unused for nc_reference
    PhraseKind kind = PhraseKind::classical_triple;

    bool operator==(const Phrase& o) const {
        return d == o.d && ell == o.ell && c == o.c && kind == o.kind;
    }
};

struct Parsing {
    std::vector<Phrase> phrases;
    Variant variant = Variant::classical;

    std::size_t z() const { return phrases.size(); }

    std::uint64_t total_length() const {
        std::uint64_t t = 0;
        for (const Phrase& f : phrases) t += f.ell;
        return t;
    }
};

struct Violation {
    std::size_t phrase_index;
    std::string reason;
};

using ValidationResult = std::optional<Violation>;  // nullopt == ok

/// Checks every phrase against the text: lengths sum to n, copied parts match
/// at the referenced source (overlap with the phrase itself is permitted),
/// explicit letters match, and kinds agree with the parsing's variant.
inline ValidationResult validate_parsing(const Text& s, const Parsing& p) {
    const std::size_t n = s.n();
    if (p.total_length() != n)
        return Violation{0, "phrase lengths do not sum to text length"};

    std::uint64_t pos = 0;  // letters consumed so far == phrase start
    for (std::size_t idx = 0; idx < p.phrases.size(); ++idx) {
        const Phrase& f = p.phrases[idx];
        if (f.ell < 1) return Violation{idx, "phrase length must be >= 1"};

        const bool classical_kind = f.kind == PhraseKind::classical_triple;
        if ((p.variant == Variant::classical) != classical_kind)
            return Violation{idx, "phrase kind does not match parsing variant"};

        switch (f.kind) {
            case PhraseKind::classical_triple: {
                if (s[pos + f.ell - 1] != f.c)
                    return Violation{idx, "explicit letter differs from text"};
                if (f.ell == 1) {
                    if (f.d != 0) return Violation{idx, "one-letter phrase must store d = 0"};
                } else {
                    if (f.d + 1 > pos)
                        return Violation{idx, "reference reaches before the text start"};
                    std::uint64_t src = pos - f.d - 1;
                    for (std::uint64_t t = 0; t + 1 < f.ell; ++t)
                        if (s[src + t] != s[pos + t])
                            return Violation{idx, "copied part differs from source"};
                }
                break;
            }
            case PhraseKind::nc_literal: {
                if (f.ell != 1) return Violation{idx, "literal must have length 1"};
                if (f.d != 0) return Violation{idx, "literal must store d = 0"};
                if (s[pos] != f.c) return Violation{idx, "literal differs from text"};
                break;
            }
            case PhraseKind::nc_reference: {
                if (f.d + 1 > pos)
                    return Violation{idx, "reference reaches before the text start"};
                std::uint64_t src = pos - f.d - 1;
                for (std::uint64_t t = 0; t < f.ell; ++t)
                    if (s[src + t] != s[pos + t])
                        return Violation{idx, "referenced string differs from source"};
                break;
            }
        }
        pos += f.ell;
    }
    return std::nullopt;
}

/// Rebuilds the text from a parsing alone. References are resolved left to
/// right, so a source overlapping its own phrase copies correctly.
inline Text reconstruct(const Parsing& p) {
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(p.total_length()));
    for (std::size_t idx = 0; idx < p.phrases.size(); ++idx) {
        const Phrase& f = p.phrases[idx];
        const std::uint64_t pos = out.size();
        switch (f.kind) {
            case PhraseKind::classical_triple: {
                if (f.ell > 1) {
                    if (f.d + 1 > pos)
                        throw DanglingReference("phrase " + std::to_string(idx) +
                                                " copies from before the text start");
                    std::uint64_t src = pos - f.d - 1;
                    for (std::uint64_t t = 0; t + 1 < f.ell; ++t) out.push_back(out[src + t]);
                }
                out.push_back(f.c);
                break;
            }
            case PhraseKind::nc_literal:
                out.push_back(f.c);
                break;
            case PhraseKind::nc_reference: {
                if (f.d + 1 > pos)
                    throw DanglingReference("phrase " + std::to_string(idx) +
                                            " copies from before the text start");
                std::uint64_t src = pos - f.d - 1;
                for (std::uint64_t t = 0; t < f.ell; ++t) out.push_back(out[src + t]);
                break;
            }
        }
    }
    return Text(std::move(out));
}

}  // namespace lzrl
