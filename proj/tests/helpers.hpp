#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lzrl/parsing.hpp"
#include "lzrl/text.hpp"

namespace testutil {

// Deterministic splitmix64 stream; identical across platforms, unlike the
// standard distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

inline lzrl::Text random_text(Rng& rng, std::size_t n, std::size_t sigma) {
    std::vector<lzrl::Letter> letters(n);
    std::size_t cap = std::min<std::size_t>(sigma, n + 1);
    for (auto& c : letters) c = static_cast<lzrl::Letter>(rng.below(cap));
    return lzrl::Text(std::move(letters));
}

inline lzrl::Text text_of(const std::string& ascii) {
    std::vector<lzrl::Letter> letters;
    letters.reserve(ascii.size());
    for (char ch : ascii) letters.push_back(static_cast<lzrl::Letter>(ch - 'a'));
    return lzrl::Text(std::move(letters));
}

// Direct simulation of the greedy rule with quadratic scans; the reference
// for the indexed parser.
inline lzrl::Parsing naive_greedy_classical(const lzrl::Text& s) {
    const auto& t = s.letters();
    const std::size_t n = t.size();
    lzrl::Parsing p;
    p.variant = lzrl::Variant::classical;
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t best = 0;
        std::int64_t best_j = -1;
        for (std::size_t j = 0; j < pos; ++j) {
            std::size_t l = 0;
            while (pos + l < n && t[j + l] == t[pos + l]) ++l;
            if (l >= best && l > 0) {
                best = l;
                best_j = static_cast<std::int64_t>(j);
            }
        }
        std::size_t ell = std::min(best + 1, n - pos);
        lzrl::Phrase f;
        f.kind = lzrl::PhraseKind::classical_triple;
        f.ell = ell;
        f.c = t[pos + ell - 1];
        if (ell > 1) {
            std::size_t lambda = ell - 1;
            std::int64_t rj = -1;
            for (std::size_t j = 0; j < pos; ++j) {
                bool ok = true;
                for (std::size_t u = 0; u < lambda; ++u)
                    if (t[j + u] != t[pos + u]) {
                        ok = false;
                        break;
                    }
                if (ok) rj = static_cast<std::int64_t>(j);
            }
            f.d = static_cast<std::uint64_t>(static_cast<std::int64_t>(pos) - rj - 1);
            (void)best_j;
        }
        p.phrases.push_back(f);
        pos += ell;
    }
    return p;
}

inline lzrl::Parsing naive_greedy_nonclassical(const lzrl::Text& s) {
    const auto& t = s.letters();
    const std::size_t n = t.size();
    lzrl::Parsing p;
    p.variant = lzrl::Variant::nonclassical;
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t best = 0;
        std::int64_t best_j = -1;
        for (std::size_t j = 0; j < pos; ++j) {
            std::size_t l = 0;
            while (pos + l < n && t[j + l] == t[pos + l]) ++l;
            if (l >= best && l > 0) {
                best = l;
                best_j = static_cast<std::int64_t>(j);
            }
        }
        lzrl::Phrase f;
        if (best == 0) {
            f.kind = lzrl::PhraseKind::nc_literal;
            f.ell = 1;
            f.c = t[pos];
        } else {
            f.kind = lzrl::PhraseKind::nc_reference;
            f.ell = best;
            std::int64_t rj = -1;
            for (std::size_t j = 0; j < pos; ++j) {
                bool ok = true;
                for (std::size_t u = 0; u < best; ++u)
                    if (t[j + u] != t[pos + u]) {
                        ok = false;
                        break;
                    }
                if (ok) rj = static_cast<std::int64_t>(j);
            }
            f.d = static_cast<std::uint64_t>(static_cast<std::int64_t>(pos) - rj - 1);
            (void)best_j;
        }
        p.phrases.push_back(f);
        pos += f.ell;
    }
    return p;
}

// Rightmost start j < p of an exact occurrence of t[p..p+len-1], by scanning.
inline std::int64_t naive_rightmost(const std::vector<lzrl::Letter>& t, std::size_t p,
                                    std::size_t len) {
    std::int64_t best = -1;
    for (std::size_t j = 0; j < p; ++j) {
        bool ok = true;
        for (std::size_t u = 0; u < len; ++u)
            if (t[j + u] != t[p + u]) {
                ok = false;
                break;
            }
        if (ok) best = static_cast<std::int64_t>(j);
    }
    return best;
}

}  // namespace testutil
