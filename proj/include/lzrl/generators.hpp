#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lzrl/affine_plane.hpp"
#include "lzrl/gray.hpp"
#include "lzrl/parser.hpp"
#include "lzrl/parsing.hpp"
#include "lzrl/text.hpp"

namespace lzrl {

enum class Family : std::uint8_t {
    gray_multi = 0,
    gray_binary = 1,
    gray_multi_nc = 2,
    gray_binary_nc = 3,
    steiner = 4,
    steiner_nc = 5,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::gray_multi: return "gray_multi";
        case Family::gray_binary: return "gray_binary";
        case Family::gray_multi_nc: return "gray_multi_nc";
        case Family::gray_binary_nc: return "gray_binary_nc";
        case Family::steiner: return "steiner";
        case Family::steiner_nc: return "steiner_nc";
    }
    return "?";
}

inline std::optional<Family> family_from_name(const std::string& name) {
    for (Family f : {Family::gray_multi, Family::gray_binary, Family::gray_multi_nc,
                     Family::gray_binary_nc, Family::steiner, Family::steiner_nc})
        if (name == family_name(f)) return f;
    return std::nullopt;
}

struct Markers {
    std::uint64_t run_start = 0;  // run of the filler letter, [run_start, run_end)
    std::uint64_t run_end = 0;
    std::uint64_t suffix_start = 0;    // first position of the suffix section
    std::uint64_t appended_start = 0;  // == n when no unused letters were appended
    std::vector<std::uint64_t> suffix_block_starts;
    // steiner: inclusive end position of each 9-letter base block, plus its pair
    std::vector<std::uint64_t> base_block_ends_prefix;
    std::vector<std::uint64_t> base_block_ends_suffix;
    std::vector<std::pair<Letter, Letter>> base_pairs;
};

struct GeneratedInstance {
    GeneratedInstance(Text t, Family f, Variant v)
        : text(std::move(t)), family(f), variant(v) {}

    Text text;
    Family family;
    Variant variant;
    std::uint64_t n = 0;
    std::uint64_t sigma = 0;  // realized alphabet size
    std::uint64_t z_req = 0;  // requested z (0 for steiner families)
    std::uint64_t k = 0;
    std::uint64_t ell = 0;
    std::uint64_t m = 0;
    std::uint64_t x = 0;  // steiner recursion depth
    bool degenerate = false;
    Markers markers;
    std::vector<Segment> witness_segments;
};

/// The explicit cheap parsing from the instance's construction; its encoded
/// size upper-bounds the optimal.
inline Parsing witness_parse(const GeneratedInstance& inst) {
    Parsing w = build_parsing(inst.text, inst.witness_segments, inst.variant);
    if (auto v = validate_parsing(inst.text, w))
        throw InvalidParsing("witness phrase " + std::to_string(v->phrase_index) + ": " +
                             v->reason);
    return w;
}

namespace detail {

inline std::vector<Segment> segments_of(const Parsing& p) {
    std::vector<Segment> segs;
    segs.reserve(p.z());
    for (const Phrase& f : p.phrases) segs.push_back(Segment{f.ell, f.kind});
    return segs;
}

// 1-based position of the single differing digit between consecutive words.
inline std::uint32_t gray_diff_pos(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& b) {
    std::uint32_t pos = 0;
    unsigned count = 0;
    for (std::uint32_t t = 0; t < a.size(); ++t)
        if (a[t] != b[t]) {
            pos = t + 1;
            ++count;
        }
    if (count != 1) throw Error("consecutive gray words differ in " + std::to_string(count) +
                                " positions");
    return pos;
}

inline std::uint64_t ceil_half(std::uint64_t n) { return (n + 1) / 2; }

// largest k with ell(k) = n - k*block - 1 >= ceil(n/2), clamped to [0, hi]
inline std::uint64_t cap_k(std::uint64_t n, std::uint64_t block, std::uint64_t hi) {
    std::uint64_t budget = n - 1 - ceil_half(n);
    return std::min(hi, budget / block);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InvalidParams(msg);
}

// letters [1..sigma] with sigma distinct values; the ratio claim is trivial
// for sigma >= n/4, so any covering text will do
inline GeneratedInstance degenerate_instance(Family family, Variant variant, std::uint64_t n,
                                             std::uint64_t sigma, std::uint64_t z) {
    std::vector<Letter> letters;
    letters.reserve(n);
    for (std::uint64_t c = 1; c <= sigma; ++c) letters.push_back(static_cast<Letter>(c));
    while (letters.size() < n) letters.push_back(1);
    GeneratedInstance inst{Text(std::move(letters)), family, variant};
    inst.n = n;
    inst.sigma = inst.text.sigma();
    inst.z_req = z;
    inst.degenerate = true;
    Parsing g = variant == Variant::classical ? greedy_parse_classical(inst.text)
                                              : greedy_parse_nonclassical(inst.text);
    inst.witness_segments = segments_of(g);
    inst.markers.appended_start = n;
    return inst;
}

}  // namespace detail

inline GeneratedInstance gen_gray_multi(std::uint64_t n, std::uint64_t sigma, std::uint64_t z) {
    detail::require(n >= 2, "n must be at least 2");
    detail::require(sigma >= 3 && sigma <= n, "sigma must lie in [3..n]");
    detail::require(z >= sigma, "z must be at least sigma");
    detail::require(static_cast<double>(z) <=
                        static_cast<double>(n) * std::log2(double(sigma)) / std::log2(double(n)) +
                            1e-9,
                    "z must not exceed n / log_sigma(n)");

    if (4 * sigma >= n)
        return detail::degenerate_instance(Family::gray_multi, Variant::classical, n, sigma, z);

    const std::uint32_t tau = static_cast<std::uint32_t>(sigma - 1);
    std::uint32_t m = 1;
    std::uint64_t pow = tau;
    while (pow < z) {
        pow *= tau;
        ++m;
    }

    std::uint64_t k = std::min<std::uint64_t>(z, detail::cap_k(n, 2 * m + 1, pow - 1));
    detail::require(k >= 1, "n too small for any phrase block");
    detail::require(4 * k >= z, "k = Theta(z) unreachable: raise n or lower z");

    // words over [2..sigma]; the gray terminal digit 0 maps to the run letter a = 2
    std::vector<std::vector<Letter>> words(k);
    std::vector<std::uint32_t> diff(k + 1, 0);
    std::vector<std::uint32_t> prev_digits, digits;
    for (std::uint64_t i = 1; i <= k; ++i) {
        digits = gray_word(tau, m, 0, i);
        if (i >= 2) diff[i] = detail::gray_diff_pos(prev_digits, digits);
        words[i - 1].reserve(m);
        for (std::uint32_t g : digits) words[i - 1].push_back(static_cast<Letter>(2 + g));
        prev_digits = digits;
    }

    const Letter b = 1, a = 2;
    std::set<Letter> used{b, a};
    for (const auto& w : words) used.insert(w.begin(), w.end());
    std::vector<Letter> unused;
    for (std::uint64_t c = 1; c <= sigma; ++c)
        if (!used.count(static_cast<Letter>(c))) unused.push_back(static_cast<Letter>(c));

    std::uint64_t ell = n - k * (2 * m + 1) - 1 - unused.size();
    detail::require(ell > m && ell >= detail::ceil_half(n) / 2,
                    "run too short; raise n or lower z");

    std::vector<Letter> t;
    t.reserve(n);
    for (const auto& w : words) t.insert(t.end(), w.begin(), w.end());
    GeneratedInstance inst{Text(std::vector<Letter>{0}), Family::gray_multi, Variant::classical};
    inst.markers.run_start = t.size();
    t.insert(t.end(), ell, a);
    inst.markers.run_end = t.size();
    t.push_back(b);
    inst.markers.suffix_start = t.size();
    for (const auto& w : words) {
        inst.markers.suffix_block_starts.push_back(t.size());
        t.insert(t.end(), w.begin(), w.end());
        t.push_back(b);
    }
    inst.markers.appended_start = t.size();
    t.insert(t.end(), unused.begin(), unused.end());
    if (t.size() != n) throw Error("gray_multi length bookkeeping is off");

    inst.text = Text(std::move(t));
    inst.n = n;
    inst.sigma = inst.text.sigma();
    if (inst.sigma != sigma) throw Error("gray_multi alphabet bookkeeping is off");
    inst.z_req = z;
    inst.k = k;
    inst.ell = ell;
    inst.m = m;

    auto& segs = inst.witness_segments;
    for (std::uint32_t t2 = 0; t2 < m; ++t2)
        segs.push_back(Segment{1, PhraseKind::classical_triple});  // spell out s_1
    for (std::uint64_t i = 2; i <= k; ++i) {
        std::uint32_t j = diff[i];
        segs.push_back(Segment{j, PhraseKind::classical_triple});
        if (j < m) segs.push_back(Segment{m - j, PhraseKind::classical_triple});
    }
    segs.push_back(Segment{1, PhraseKind::classical_triple});    // a
    segs.push_back(Segment{ell, PhraseKind::classical_triple});  // a^{ell-1} b, self-referential
    segs.push_back(Segment{m + 1, PhraseKind::classical_triple});  // s_1 b copied from the prefix
    for (std::uint64_t i = 2; i <= k; ++i) {
        std::uint32_t j = diff[i];
        segs.push_back(Segment{j, PhraseKind::classical_triple});
        segs.push_back(Segment{m + 1 - j, PhraseKind::classical_triple});
    }
    for (std::size_t u = 0; u < unused.size(); ++u)
        segs.push_back(Segment{1, PhraseKind::classical_triple});
    return inst;
}

inline GeneratedInstance gen_gray_binary(std::uint64_t n, std::uint64_t z) {
    detail::require(n >= 4, "n must be at least 4");
    detail::require(z >= 2, "z must be at least 2");
    detail::require(static_cast<double>(z) <=
                        static_cast<double>(n) / std::log2(double(n)) + 1e-9,
                    "z must not exceed n / log2(n)");

    std::uint32_t m = 1;
    std::uint64_t pow = 2;
    while (pow < z) {
        pow *= 2;
        ++m;
    }

    std::uint64_t k = std::min<std::uint64_t>(z, detail::cap_k(n, 4 * m + 3, pow - 1));
    detail::require(k >= 1, "n too small for any phrase block");
    detail::require(4 * k >= z, "k = Theta(z) unreachable: raise n or lower z");

    std::uint64_t ell = n - k * (4 * m + 3) - 1;
    detail::require(ell > 4 * m, "run must exceed 4m");

    std::vector<std::vector<Letter>> words(k);
    std::vector<std::uint32_t> diff(k + 1, 0);
    std::vector<std::uint32_t> prev_digits, digits;
    for (std::uint64_t i = 1; i <= k; ++i) {
        digits = gray_word(2, m, 0, i);
        if (i >= 2) diff[i] = detail::gray_diff_pos(prev_digits, digits);
        words[i - 1].assign(digits.begin(), digits.end());
        prev_digits = digits;
    }
    // flag letters make each suffix block unique: c_i differs from the letter
    // that follows s_i 0^m 1 in the prefix
    std::vector<Letter> flag(k + 1, 1);
    for (std::uint64_t i = 1; i < k; ++i) flag[i] = words[i][0] == 1 ? 0 : 1;
    flag[k] = 1;

    std::vector<Letter> t;
    t.reserve(n);
    GeneratedInstance inst{Text(std::vector<Letter>{0}), Family::gray_binary,
                           Variant::classical};
    for (const auto& w : words) {
        t.insert(t.end(), w.begin(), w.end());
        t.insert(t.end(), m, 0);
        t.push_back(1);
    }
    inst.markers.run_start = t.size();
    t.insert(t.end(), ell, 0);
    inst.markers.run_end = t.size();
    t.push_back(1);
    inst.markers.suffix_start = t.size();
    for (std::uint64_t i = 1; i <= k; ++i) {
        inst.markers.suffix_block_starts.push_back(t.size());
        t.insert(t.end(), words[i - 1].begin(), words[i - 1].end());
        t.insert(t.end(), m, 0);
        t.push_back(1);
        t.push_back(flag[i]);
    }
    inst.markers.appended_start = t.size();
    if (t.size() != n) throw Error("gray_binary length bookkeeping is off");

    inst.text = Text(std::move(t));
    inst.n = n;
    inst.sigma = inst.text.sigma();
    inst.z_req = z;
    inst.k = k;
    inst.ell = ell;
    inst.m = m;

    auto& segs = inst.witness_segments;
    for (std::uint32_t u = 0; u < 2 * m + 1; ++u)
        segs.push_back(Segment{1, PhraseKind::classical_triple});  // first block letter by letter
    for (std::uint64_t i = 2; i <= k; ++i) {
        std::uint32_t j = diff[i];
        segs.push_back(Segment{j, PhraseKind::classical_triple});
        segs.push_back(Segment{2 * m + 1 - j, PhraseKind::classical_triple});
    }
    segs.push_back(Segment{1, PhraseKind::classical_triple});    // 0
    segs.push_back(Segment{ell, PhraseKind::classical_triple});  // 0^{ell-1} 1
    for (std::uint32_t u = 0; u < 2 * m + 2; ++u)
        segs.push_back(Segment{1, PhraseKind::classical_triple});  // first suffix block
    for (std::uint64_t i = 2; i <= k; ++i) {
        std::uint32_t j = diff[i];
        segs.push_back(Segment{j, PhraseKind::classical_triple});
        segs.push_back(Segment{2 * m + 2 - j, PhraseKind::classical_triple});
    }
    return inst;
}

inline GeneratedInstance gen_gray_multi_nc(std::uint64_t n, std::uint64_t sigma,
                                           std::uint64_t z) {
    detail::require(n >= 2, "n must be at least 2");
    detail::require(sigma >= 3 && sigma <= n, "sigma must lie in [3..n]");
    detail::require(z >= sigma, "z must be at least sigma");
    detail::require(static_cast<double>(z) <=
                        static_cast<double>(n) * std::log2(double(sigma)) / std::log2(double(n)) +
                            1e-9,
                    "z must not exceed n / log_sigma(n)");

    if (4 * sigma >= n)
        return detail::degenerate_instance(Family::gray_multi_nc, Variant::nonclassical, n, sigma,
                                           z);

    const std::uint32_t tau = static_cast<std::uint32_t>(sigma - 1);
    std::uint32_t m = 1;
    std::uint64_t pow = tau;
    while (pow < z) {
        pow *= tau;
        ++m;
    }

    std::uint64_t k = std::min<std::uint64_t>(z, detail::cap_k(n, 2 * m + 3, pow - 1));
    detail::require(k >= 1, "n too small for any phrase block");
    detail::require(4 * k >= z, "k = Theta(z) unreachable: raise n or lower z");

    std::vector<std::vector<Letter>> words(k);
    std::vector<std::uint32_t> diff(k + 1, 0);
    std::vector<std::uint32_t> prev_digits, digits;
    for (std::uint64_t i = 1; i <= k; ++i) {
        digits = gray_word(tau, m, 0, i);
        if (i >= 2) diff[i] = detail::gray_diff_pos(prev_digits, digits);
        words[i - 1].reserve(m);
        for (std::uint32_t g : digits) words[i - 1].push_back(static_cast<Letter>(2 + g));
        prev_digits = digits;
    }

    const Letter b = 1, a = 2;
    std::set<Letter> used{b, a};
    for (const auto& w : words) used.insert(w.begin(), w.end());
    std::vector<Letter> unused;
    for (std::uint64_t c = 1; c <= sigma; ++c)
        if (!used.count(static_cast<Letter>(c))) unused.push_back(static_cast<Letter>(c));

    std::uint64_t ell = n - k * (2 * m + 3) - 1 - unused.size();
    detail::require(ell > 2 * m + 2 && ell >= detail::ceil_half(n) / 2,
                    "run too short; raise n or lower z");

    std::vector<Letter> t;
    t.reserve(n);
    GeneratedInstance inst{Text(std::vector<Letter>{0}), Family::gray_multi_nc,
                           Variant::nonclassical};
    for (const auto& w : words) {
        t.push_back(b);
        t.insert(t.end(), w.begin(), w.end());
    }
    t.push_back(b);
    inst.markers.run_start = t.size();
    t.insert(t.end(), ell, a);
    inst.markers.run_end = t.size();
    inst.markers.suffix_start = t.size();
    for (const auto& w : words) {
        inst.markers.suffix_block_starts.push_back(t.size());
        t.push_back(b);
        t.insert(t.end(), w.begin(), w.end());
        t.push_back(b);
    }
    inst.markers.appended_start = t.size();
    t.insert(t.end(), unused.begin(), unused.end());
    if (t.size() != n) throw Error("gray_multi_nc length bookkeeping is off");

    inst.text = Text(std::move(t));
    inst.n = n;
    inst.sigma = inst.text.sigma();
    if (inst.sigma != sigma) throw Error("gray_multi_nc alphabet bookkeeping is off");
    inst.z_req = z;
    inst.k = k;
    inst.ell = ell;
    inst.m = m;

    auto& segs = inst.witness_segments;
    auto lit = [&segs](std::uint64_t count) {
        for (std::uint64_t u = 0; u < count; ++u) segs.push_back(Segment{1, PhraseKind::nc_literal});
    };
    auto ref = [&segs](std::uint64_t len) { segs.push_back(Segment{len, PhraseKind::nc_reference}); };
    lit(1 + m);  // b s_1 spelled out
    for (std::uint64_t i = 2; i <= k; ++i) {
        std::uint32_t j = diff[i];
        if (j >= 2)
            ref(j);  // b s_i[1..j-1] from the previous block
        else
            lit(1);  // bare b
        lit(1);      // the differing letter
        if (j < m) ref(m - j);  // s_i[j+1..m] from the previous block
    }
    lit(1);  // trailing b
    lit(1);  // first a of the run
    if (ell >= 2) ref(ell - 1);  // self-referential a^{ell-1}
    ref(m + 2);                  // b s_1 b copied from the prefix
    for (std::uint64_t i = 2; i <= k; ++i) {
        std::uint32_t j = diff[i];
        if (j >= 2)
            ref(j);
        else
            lit(1);
        lit(1);
        if (j < m)
            ref(m + 1 - j);  // s_i[j+1..m] b from the previous suffix block
        else
            lit(1);          // bare closing b
    }
    lit(unused.size());
    return inst;
}

inline GeneratedInstance gen_gray_binary_nc(std::uint64_t n, std::uint64_t z) {
    detail::require(n >= 8, "n must be at least 8");
    detail::require(z >= 2, "z must be at least 2");
    detail::require(static_cast<double>(z) <=
                        static_cast<double>(n) / std::log2(double(n)) + 1e-9,
                    "z must not exceed n / log2(n)");

    std::uint32_t m = 1;
    std::uint64_t pow = 2;
    while (pow < z) {
        pow *= 2;
        ++m;
    }

    std::uint64_t k = std::min<std::uint64_t>(z, detail::cap_k(n, 4 * m + 7, pow - 1));
    detail::require(k >= 1, "n too small for any phrase block");
    detail::require(4 * k >= z, "k = Theta(z) unreachable: raise n or lower z");

    std::uint64_t ell = n - k * (4 * m + 7) - 2;
    detail::require(ell >= 4 * m + 3, "run must exceed 4m");

    std::vector<std::vector<Letter>> words(k);
    std::vector<std::uint32_t> diff(k + 1, 0);
    std::vector<std::uint32_t> prev_digits, digits;
    for (std::uint64_t i = 1; i <= k; ++i) {
        digits = gray_word(2, m, 0, i);
        if (i >= 2) diff[i] = detail::gray_diff_pos(prev_digits, digits);
        words[i - 1].assign(digits.begin(), digits.end());
        prev_digits = digits;
    }

    std::vector<Letter> t;
    t.reserve(n);
    GeneratedInstance inst{Text(std::vector<Letter>{0}), Family::gray_binary_nc,
                           Variant::nonclassical};
    auto push_alpha = [&t](std::uint32_t m_) {
        t.insert(t.end(), m_ + 1, 0);
        t.push_back(1);
    };
    for (const auto& w : words) {
        t.push_back(1);
        t.push_back(0);
        t.insert(t.end(), w.begin(), w.end());
        push_alpha(m);
    }
    inst.markers.run_start = t.size();
    t.insert(t.end(), ell, 0);
    inst.markers.run_end = t.size();
    inst.markers.suffix_start = t.size();
    t.push_back(1);
    for (const auto& w : words) {
        inst.markers.suffix_block_starts.push_back(t.size());
        t.push_back(0);
        t.insert(t.end(), w.begin(), w.end());
        push_alpha(m);
    }
    t.push_back(0);
    inst.markers.appended_start = t.size();
    if (t.size() != n) throw Error("gray_binary_nc length bookkeeping is off");

    inst.text = Text(std::move(t));
    inst.n = n;
    inst.sigma = inst.text.sigma();
    inst.z_req = z;
    inst.k = k;
    inst.ell = ell;
    inst.m = m;

    auto& segs = inst.witness_segments;
    auto lit = [&segs](std::uint64_t count) {
        for (std::uint64_t u = 0; u < count; ++u) segs.push_back(Segment{1, PhraseKind::nc_literal});
    };
    auto ref = [&segs](std::uint64_t len) { segs.push_back(Segment{len, PhraseKind::nc_reference}); };
    lit(2 * m + 4);  // first prefix block letter by letter
    for (std::uint64_t i = 2; i <= k; ++i) {
        std::uint32_t j = diff[i];
        ref(j + 1);  // 1 0 s_i[1..j-1] from the previous block
        lit(1);
        ref(2 * m + 2 - j);  // s_i[j+1..m] alpha from the previous block
    }
    lit(1);          // first 0 of the run
    ref(ell - 1);    // self-referential 0^{ell-1}
    lit(1);          // the 1 opening the suffix
    ref(2 * m + 3);  // 0 s_1 alpha copied from the first prefix block
    for (std::uint64_t i = 2; i <= k; ++i) {
        std::uint32_t j = diff[i];
        if (j >= 2)
            ref(j);  // 0 s_i[1..j-1] from the previous suffix block
        else
            lit(1);
        lit(1);
        ref(2 * m + 2 - j);  // s_i[j+1..m] alpha from the previous suffix block
    }
    lit(1);  // closing 0
    return inst;
}

// ---- Steiner-system family ----

/// Number of blocks of the Steiner system on 2^{2^i} points.
inline std::uint64_t steiner_block_count(std::uint32_t i) {
    auto choose2 = [](std::uint64_t v) { return v * (v - 1) / 2; };
    std::uint64_t big = std::uint64_t(1) << (std::uint64_t(1) << i);
    std::uint64_t small = std::uint64_t(1) << (std::uint64_t(1) << (i - 1));
    return choose2(big) / choose2(small);
}

/// L(i): length of r(S) for |S| = 2^{2^i}.
inline std::uint64_t steiner_length(std::uint32_t i) {
    if (i == 0) return 9;
    return 2 * (std::uint64_t(1) << (std::uint64_t(1) << i)) +
           steiner_block_count(i) * steiner_length(i - 1);
}

namespace detail {

struct SteinerBuild {
    std::vector<Letter>* out;
    std::vector<Segment>* segs;  // nullable
    Variant variant;
    std::vector<std::uint64_t>* base_ends;
    std::vector<std::pair<Letter, Letter>>* base_pairs;  // only recorded once (suffix copy)
    const std::vector<AffinePlane>* planes;              // planes[i-1] has order 2^{2^{i-1}}
};

// r(S) / r'(S): q(S) followed by the expansion of every Steiner block of S.
// prime selects the r' base case (final letter c instead of d).
inline void steiner_emit(SteinerBuild& b, const std::vector<Letter>& S, std::uint32_t level,
                         bool top, bool prime) {
    auto& out = *b.out;
    if (level == 0) {
        Letter lo = S[0], hi = S[1];
        Letter last = prime ? 0 : 1;
        const Letter block[9] = {lo, 0, hi, 0, lo, 0, hi, 1, last};
        out.insert(out.end(), block, block + 9);
        if (b.base_ends) b.base_ends->push_back(out.size() - 1);
        if (b.base_pairs) b.base_pairs->emplace_back(lo, hi);
        if (b.segs) {
            if (b.variant == Variant::classical) {
                for (int u = 0; u < 4; ++u) b.segs->push_back(Segment{2, PhraseKind::classical_triple});
                b.segs->push_back(Segment{1, PhraseKind::classical_triple});
            } else {
                // letters from A refer back to q(S); c and d ride on their codes
                for (int u = 0; u < 9; ++u)
                    b.segs->push_back(Segment{1, (u % 2 == 0 && u < 7) ? PhraseKind::nc_reference
                                                                       : PhraseKind::nc_literal});
            }
        }
        return;
    }

    for (Letter a : S) {
        out.push_back(a);
        out.push_back(1);
        if (b.segs) {
            if (top) {
                PhraseKind kind = b.variant == Variant::classical ? PhraseKind::classical_triple
                                                                  : PhraseKind::nc_literal;
                b.segs->push_back(Segment{1, kind});
                b.segs->push_back(Segment{1, kind});
            } else if (b.variant == Variant::classical) {
                b.segs->push_back(Segment{2, PhraseKind::classical_triple});
            } else {
                b.segs->push_back(Segment{1, PhraseKind::nc_reference});
                b.segs->push_back(Segment{1, PhraseKind::nc_literal});
            }
        }
    }

    const AffinePlane& plane = (*b.planes)[level - 1];
    for (const auto& line : plane.lines) {
        std::vector<Letter> block;
        block.reserve(line.size());
        for (std::uint32_t pt : line) block.push_back(S[pt]);
        steiner_emit(b, block, level - 1, false, prime);
    }
}

}  // namespace detail

inline GeneratedInstance gen_steiner_impl(std::uint64_t n, std::optional<std::uint32_t> forced_x,
                                          Variant variant) {
    detail::require(n >= 2, "n must be at least 2");
    std::uint32_t x;
    if (forced_x) {
        x = *forced_x;
        detail::require(x >= 1 && x <= 4, "supported recursion depths are 1..4");
    } else {
        double target = std::sqrt(std::log2(double(n)));
        x = 1;
        while (std::pow(2.0, std::pow(2.0, double(x))) <= target) ++x;
        if (x > 4) throw UnsupportedOrder("alphabet order beyond 256 is not supported");
    }

    const std::uint64_t len_r = steiner_length(x);
    if (n < 2 * len_r || n - 2 * len_r < detail::ceil_half(n))
        throw InstanceTooSmall("need n >= 4 * L(x) so the run keeps ell >= n/2");
    const std::uint64_t ell = n - 2 * len_r;

    const std::uint64_t asize = std::uint64_t(1) << (std::uint64_t(1) << x);
    std::vector<Letter> A(asize);
    for (std::uint64_t i = 0; i < asize; ++i) A[i] = static_cast<Letter>(i + 2);

    std::vector<AffinePlane> planes;
    for (std::uint32_t i = 1; i <= x; ++i)
        planes.push_back(affine_plane(1u << (1u << (i - 1))));

    GeneratedInstance inst{Text(std::vector<Letter>{0}),
                           variant == Variant::classical ? Family::steiner : Family::steiner_nc,
                           variant};
    std::vector<Letter> t;
    t.reserve(n);
    std::vector<Segment> segs;

    detail::SteinerBuild build{&t, &segs, variant, &inst.markers.base_block_ends_prefix, nullptr,
                               &planes};
    detail::steiner_emit(build, A, x, true, /*prime=*/true);
    if (t.size() != len_r) throw Error("steiner r'(A) length bookkeeping is off");

    inst.markers.run_start = t.size();
    t.insert(t.end(), ell, 0);
    inst.markers.run_end = t.size();
    segs.push_back(Segment{1, variant == Variant::classical ? PhraseKind::classical_triple
                                                            : PhraseKind::nc_literal});
    if (ell >= 2)
        segs.push_back(Segment{ell - 1, variant == Variant::classical
                                            ? PhraseKind::classical_triple
                                            : PhraseKind::nc_reference});

    inst.markers.suffix_start = t.size();
    detail::SteinerBuild build2{&t, &segs, variant, &inst.markers.base_block_ends_suffix,
                                &inst.markers.base_pairs, &planes};
    detail::steiner_emit(build2, A, x, true, /*prime=*/false);
    inst.markers.appended_start = t.size();
    if (t.size() != n) throw Error("steiner length bookkeeping is off");

    inst.text = Text(std::move(t));
    inst.n = n;
    inst.sigma = inst.text.sigma();
    if (inst.sigma != asize + 2) throw Error("steiner alphabet bookkeeping is off");
    inst.z_req = 0;
    inst.k = inst.markers.base_pairs.size();
    inst.ell = ell;
    inst.m = 0;
    inst.x = x;
    inst.witness_segments = std::move(segs);
    return inst;
}

inline GeneratedInstance gen_steiner(std::uint64_t n,
                                     std::optional<std::uint32_t> forced_x = std::nullopt) {
    return gen_steiner_impl(n, forced_x, Variant::classical);
}

inline GeneratedInstance gen_steiner_nc(std::uint64_t n,
                                        std::optional<std::uint32_t> forced_x = std::nullopt) {
    return gen_steiner_impl(n, forced_x, Variant::nonclassical);
}

inline GeneratedInstance generate(Family f, std::uint64_t n, std::uint64_t sigma, std::uint64_t z,
                                  std::optional<std::uint32_t> x = std::nullopt) {
    switch (f) {
        case Family::gray_multi: return gen_gray_multi(n, sigma, z);
        case Family::gray_binary: return gen_gray_binary(n, z);
        case Family::gray_multi_nc: return gen_gray_multi_nc(n, sigma, z);
        case Family::gray_binary_nc: return gen_gray_binary_nc(n, z);
        case Family::steiner: return gen_steiner(n, x);
        case Family::steiner_nc: return gen_steiner_nc(n, x);
    }
    throw InvalidParams("unknown family");
}

// ---- structural claims about greedy parsings of generated instances ----

struct StructureCheck {
    bool ok = false;
    std::string detail;
};

namespace detail {

inline std::vector<std::uint64_t> phrase_ends(const Parsing& p) {
    std::vector<std::uint64_t> ends;
    ends.reserve(p.z());
    std::uint64_t pos = 0;
    for (const Phrase& f : p.phrases) {
        pos += f.ell;
        ends.push_back(pos - 1);
    }
    return ends;
}

inline StructureCheck fail(const std::string& msg) { return {false, msg}; }

}  // namespace detail

/// Verifies the proof-shape of the greedy parsing over the suffix section of
/// a generated instance (and, for the Steiner family, the pair/phrase
/// correspondence).
inline StructureCheck check_structure(const GeneratedInstance& inst, const Parsing& greedy) {
    if (inst.degenerate) return {true, "degenerate instance"};
    const auto ends = detail::phrase_ends(greedy);
    auto phrase_ending_at = [&](std::uint64_t e) -> std::int64_t {
        auto it = std::lower_bound(ends.begin(), ends.end(), e);
        if (it == ends.end() || *it != e) return -1;
        return static_cast<std::int64_t>(it - ends.begin());
    };

    const std::uint64_t appended = inst.n - inst.markers.appended_start;
    switch (inst.family) {
        case Family::gray_multi:
        case Family::gray_binary: {
            // a phrase ends exactly at the anchor letter after the run, then k
            // phrases of the block shape, then one literal per appended letter
            std::uint64_t anchor = inst.markers.run_end;
            std::int64_t at = phrase_ending_at(anchor);
            if (at < 0) return detail::fail("no phrase ends at the post-run anchor");
            std::uint64_t block =
                inst.family == Family::gray_multi ? inst.m + 1 : 2 * inst.m + 2;
            std::uint64_t want = static_cast<std::uint64_t>(at) + 1 + inst.k + appended;
            if (greedy.z() != want)
                return detail::fail("suffix phrase count is " +
                                    std::to_string(greedy.z() - at - 1 - appended) +
                                    ", expected " + std::to_string(inst.k));
            for (std::uint64_t i = 0; i < inst.k; ++i) {
                const Phrase& f = greedy.phrases[at + 1 + i];
                if (f.ell != block)
                    return detail::fail("suffix phrase " + std::to_string(i + 1) + " has length " +
                                        std::to_string(f.ell) + ", expected " +
                                        std::to_string(block));
                std::uint64_t start = ends[at + 1 + i] - f.ell + 1;
                if (start != inst.markers.suffix_block_starts[i])
                    return detail::fail("suffix phrase " + std::to_string(i + 1) +
                                        " is misaligned");
            }
            for (std::uint64_t u = 0; u < appended; ++u)
                if (greedy.phrases[at + 1 + inst.k + u].ell != 1)
                    return detail::fail("appended letters must be one-letter phrases");
            return {true, ""};
        }
        case Family::gray_multi_nc: {
            std::int64_t at = phrase_ending_at(inst.markers.suffix_start - 1);
            if (at < 0) return detail::fail("no phrase ends at the run boundary");
            std::uint64_t want = static_cast<std::uint64_t>(at) + 1 + inst.k + appended;
            if (greedy.z() != want)
                return detail::fail("suffix phrase count mismatch");
            for (std::uint64_t i = 0; i < inst.k; ++i) {
                const Phrase& f = greedy.phrases[at + 1 + i];
                if (f.kind != PhraseKind::nc_reference || f.ell != inst.m + 2)
                    return detail::fail("suffix phrase " + std::to_string(i + 1) +
                                        " is not the b s_i b shape");
                std::uint64_t start = ends[at + 1 + i] - f.ell + 1;
                if (start != inst.markers.suffix_block_starts[i])
                    return detail::fail("suffix phrase " + std::to_string(i + 1) +
                                        " is misaligned");
            }
            return {true, ""};
        }
        case Family::gray_binary_nc: {
            std::int64_t at = phrase_ending_at(inst.markers.run_end - 1);
            if (at < 0) return detail::fail("no phrase ends at the run boundary");
            if (greedy.z() != static_cast<std::uint64_t>(at) + 1 + inst.k)
                return detail::fail("suffix phrase count mismatch");
            for (std::uint64_t i = 0; i < inst.k; ++i) {
                const Phrase& f = greedy.phrases[at + 1 + i];
                std::uint64_t expect;
                if (inst.k == 1)
                    expect = 2 * inst.m + 5;
                else if (i == 0 || i == inst.k - 1)
                    expect = 2 * inst.m + 4;
                else
                    expect = 2 * inst.m + 3;
                if (f.kind != PhraseKind::nc_reference || f.ell != expect)
                    return detail::fail("suffix phrase " + std::to_string(i + 1) +
                                        " has length " + std::to_string(f.ell) + ", expected " +
                                        std::to_string(expect));
            }
            return {true, ""};
        }
        case Family::steiner: {
            // each base block's bcb'dd tail is the suffix of exactly one phrase
            for (std::size_t i = 0; i < inst.markers.base_block_ends_suffix.size(); ++i) {
                std::uint64_t e = inst.markers.base_block_ends_suffix[i];
                std::int64_t at = phrase_ending_at(e);
                if (at < 0)
                    return detail::fail("no phrase ends at base block " + std::to_string(i));
                std::uint64_t start = ends[at] - greedy.phrases[at].ell + 1;
                if (start + 4 > e)
                    return detail::fail("phrase at base block " + std::to_string(i) +
                                        " does not contain the b c b' d d tail");
            }
            return {true, ""};
        }
        case Family::steiner_nc: {
            // the claim here is about the constructed parsing: everything
            // outside the run is spelled in one-letter phrases
            for (const Segment& seg : inst.witness_segments)
                if (seg.ell != 1 && seg.ell != inst.ell - 1)
                    return detail::fail("witness phrase of length " + std::to_string(seg.ell) +
                                        " outside the run");
            return {true, ""};
        }
    }
    return detail::fail("unknown family");
}

}  // namespace lzrl
