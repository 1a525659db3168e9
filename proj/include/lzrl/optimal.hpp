#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "lzrl/occurrence.hpp"
#include "lzrl/parsing.hpp"
#include "lzrl/phrase_coding.hpp"
#include "lzrl/text.hpp"

namespace lzrl {

namespace detail {

// Distance-cost profile of one start position: cost(lambda) is non-decreasing
// (the rightmost source only moves left as the copied part grows, and the
// codec is monotone), so equal endpoint costs pin a whole interval.
class DistCostProfile {
public:
    DistCostProfile(const OccurrenceIndex& idx, Codec dist_codec, std::size_t pos,
                    std::size_t max_len)
        : idx_(&idx), codec_(dist_codec), pos_(pos), cost_(max_len + 1, 0) {
        if (max_len >= 1) fill(1, max_len, eval(1), eval(max_len));
    }

    std::uint64_t operator[](std::size_t lambda) const { return cost_[lambda]; }

private:
    std::uint64_t eval(std::size_t lambda) {
        std::int64_t j = idx_->rightmost_occurrence(pos_, lambda);
        std::uint64_t d = static_cast<std::uint64_t>(static_cast<std::int64_t>(pos_) - j - 1);
        return code_length(codec_, d);
    }

    void fill(std::size_t a, std::size_t b, std::uint64_t va, std::uint64_t vb) {
        if (va == vb) {
            for (std::size_t l = a; l <= b; ++l) cost_[l] = va;
            return;
        }
        if (a + 1 == b) {
            cost_[a] = va;
            cost_[b] = vb;
            return;
        }
        std::size_t mid = a + (b - a) / 2;
        std::uint64_t vm = eval(mid);
        fill(a, mid, va, vm);
        fill(mid, b, vm, vb);
    }

    const OccurrenceIndex* idx_;
    Codec codec_;
    std::size_t pos_;
    std::vector<std::uint64_t> cost_;
};

inline Parsing phrases_from_boundaries(const Text& s, const OccurrenceIndex& idx,
                                       const std::vector<std::uint32_t>& starts,
                                       const CostModel& m) {
    Parsing p;
    p.variant = m.variant;
    p.phrases.reserve(starts.size());
    const std::size_t n = s.n();
    for (std::size_t i = 0; i < starts.size(); ++i) {
        std::size_t pos = starts[i];
        std::size_t end = i + 1 < starts.size() ? starts[i + 1] : n;
        Phrase f;
        f.ell = end - pos;
        if (m.variant == Variant::classical) {
            f.kind = PhraseKind::classical_triple;
            f.c = s[end - 1];
            if (f.ell > 1) {
                std::int64_t j = idx.rightmost_occurrence(pos, f.ell - 1);
                f.d = static_cast<std::uint64_t>(static_cast<std::int64_t>(pos) - j - 1);
            }
            p.phrases.push_back(f);
            continue;
        }
        bool as_reference = static_cast<std::size_t>(idx.lpf()[pos]) >= f.ell;
        std::uint64_t d = 0;
        if (as_reference) {
            std::int64_t j = idx.rightmost_occurrence(pos, f.ell);
            d = static_cast<std::uint64_t>(static_cast<std::int64_t>(pos) - j - 1);
            if (f.ell == 1) {
                // a length-1 phrase may serve as literal or reference;
                // mirror the relaxation order (ties go to the literal)
                std::uint64_t lit = code_length(m.letter_codec, s[pos]);
                std::uint64_t ref = code_length(m.distance_codec, d) + code_length(m.length_codec, 1);
                as_reference = ref < lit;
            }
        }
        if (as_reference) {
            f.kind = PhraseKind::nc_reference;
            f.d = d;
        } else {
            f.kind = PhraseKind::nc_literal;
            f.c = s[pos];
        }
        p.phrases.push_back(f);
    }
    return p;
}

}  // namespace detail

/// Exact bit-optimal parsing: shortest path over positions 0..n, one edge per
/// feasible phrase, edge cost = the phrase's encoded size with its distance
/// minimized. Quadratic in the worst case; intended for n up to ~2*10^4.
inline std::pair<Parsing, std::uint64_t> optimal_bits_parse(const Text& s, const CostModel& m) {
    const std::size_t n = s.n();
    OccurrenceIndex idx(s);
    const auto& lpf = idx.lpf();

    std::vector<std::uint8_t> lit_cost(n);
    for (std::size_t i = 0; i < n; ++i)
        lit_cost[i] = static_cast<std::uint8_t>(code_length(m.letter_codec, s[i]));
    std::vector<std::uint8_t> len_cost(n + 1, 0);
    for (std::size_t l = 1; l <= n; ++l)
        len_cost[l] = static_cast<std::uint8_t>(code_length(m.length_codec, l));

    const std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> dist(n + 1, inf);
    std::vector<std::int32_t> parent(n + 1, -1);
    dist[0] = 0;

    const std::uint64_t d0_cost = code_length(m.distance_codec, 0);
    const bool classical = m.variant == Variant::classical;

    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i] == inf) continue;
        const std::uint64_t base = dist[i];

        if (classical) {
            std::size_t max_ell = std::min<std::size_t>(lpf[i] + 1, n - i);
            {
                std::uint64_t c = base + d0_cost + len_cost[1] + lit_cost[i];
                if (c < dist[i + 1]) {
                    dist[i + 1] = c;
                    parent[i + 1] = static_cast<std::int32_t>(i);
                }
            }
            if (max_ell >= 2) {
                detail::DistCostProfile dc(idx, m.distance_codec, i, max_ell - 1);
                for (std::size_t ell = 2; ell <= max_ell; ++ell) {
                    std::uint64_t c = base + dc[ell - 1] + len_cost[ell] + lit_cost[i + ell - 1];
                    if (c < dist[i + ell]) {
                        dist[i + ell] = c;
                        parent[i + ell] = static_cast<std::int32_t>(i);
                    }
                }
            }
        } else {
            {
                std::uint64_t c = base + 1 + lit_cost[i];
                if (c < dist[i + 1]) {
                    dist[i + 1] = c;
                    parent[i + 1] = static_cast<std::int32_t>(i);
                }
            }
            std::size_t max_ell = lpf[i];
            if (max_ell >= 1) {
                detail::DistCostProfile dc(idx, m.distance_codec, i, max_ell);
                for (std::size_t ell = 1; ell <= max_ell; ++ell) {
                    std::uint64_t c = base + 1 + dc[ell] + len_cost[ell];
                    if (c < dist[i + ell]) {
                        dist[i + ell] = c;
                        parent[i + ell] = static_cast<std::int32_t>(i);
                    }
                }
            }
        }
    }

    std::vector<std::uint32_t> starts;
    for (std::int32_t at = static_cast<std::int32_t>(n); at > 0; at = parent[at])
        starts.push_back(static_cast<std::uint32_t>(parent[at]));
    std::reverse(starts.begin(), starts.end());

    Parsing p = detail::phrases_from_boundaries(s, idx, starts, m);
    return {std::move(p), dist[n]};
}

/// Minimal phrase count over all valid classical parsings (unit edge weights
/// on the same position graph).
inline Parsing min_phrase_parse(const Text& s) {
    const std::size_t n = s.n();
    OccurrenceIndex idx(s);
    const auto& lpf = idx.lpf();

    const std::uint32_t inf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> cnt(n + 1, inf);
    std::vector<std::int32_t> parent(n + 1, -1);
    cnt[0] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (cnt[i] == inf) continue;
        std::size_t max_ell = std::min<std::size_t>(lpf[i] + 1, n - i);
        for (std::size_t ell = 1; ell <= max_ell; ++ell) {
            if (cnt[i] + 1 < cnt[i + ell]) {
                cnt[i + ell] = cnt[i] + 1;
                parent[i + ell] = static_cast<std::int32_t>(i);
            }
        }
    }

    std::vector<std::uint32_t> starts;
    for (std::int32_t at = static_cast<std::int32_t>(n); at > 0; at = parent[at])
        starts.push_back(static_cast<std::uint32_t>(parent[at]));
    std::reverse(starts.begin(), starts.end());
    return detail::phrases_from_boundaries(s, idx, starts, CostModel{});
}

/// Encoded size of one candidate phrase, distance minimized over the valid
/// sources. Throws InfeasibleEdge when no such phrase exists.
inline std::uint64_t edge_cost(const Text& s, std::size_t i, std::size_t ell,
                               const CostModel& m) {
    const std::size_t n = s.n();
    if (i >= n || ell < 1 || i + ell > n) throw InfeasibleEdge("edge leaves the text");
    OccurrenceIndex idx(s);
    if (m.variant == Variant::classical) {
        if (ell == 1)
            return code_length(m.distance_codec, 0) + code_length(m.length_codec, 1) +
                   code_length(m.letter_codec, s[i]);
        if (static_cast<std::size_t>(idx.lpf()[i]) < ell - 1)
            throw InfeasibleEdge("copied part has no earlier occurrence");
        std::int64_t j = idx.rightmost_occurrence(i, ell - 1);
        std::uint64_t d = static_cast<std::uint64_t>(static_cast<std::int64_t>(i) - j - 1);
        return code_length(m.distance_codec, d) + code_length(m.length_codec, ell) +
               code_length(m.letter_codec, s[i + ell - 1]);
    }
    // nonclassical: a literal (length 1) or a whole earlier-occurring string
    if (static_cast<std::size_t>(idx.lpf()[i]) >= ell) {
        std::int64_t j = idx.rightmost_occurrence(i, ell);
        std::uint64_t d = static_cast<std::uint64_t>(static_cast<std::int64_t>(i) - j - 1);
        std::uint64_t ref = 1 + code_length(m.distance_codec, d) + code_length(m.length_codec, ell);
        if (ell == 1) return std::min(ref, 1 + code_length(m.letter_codec, s[i]));
        return ref;
    }
    if (ell == 1) return 1 + code_length(m.letter_codec, s[i]);
    throw InfeasibleEdge("phrase has no earlier occurrence");
}

/// Exhaustive minimum over every valid parsing, distances minimized per
/// phrase. Pure naive string scans; the independent oracle for the DP.
inline std::uint64_t brute_force_optimal(const Text& s, const CostModel& m) {
    const std::size_t n = s.n();
    if (n > 20) throw InstanceTooLarge("brute force oracle is limited to n <= 20");

    const auto& t = s.letters();
    // feas[p]: longest L with s[p..p+L-1] occurring at some j < p
    std::vector<std::size_t> feas(n, 0);
    // mind[p][L-1]: distance of the rightmost such occurrence
    std::vector<std::vector<std::uint64_t>> mind(n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t L = 1; p + L <= n; ++L) {
            std::int64_t best = -1;
            for (std::size_t j = 0; j < p; ++j) {
                bool ok = true;
                for (std::size_t u = 0; u < L; ++u)
                    if (t[j + u] != t[p + u]) {
                        ok = false;
                        break;
                    }
                if (ok) best = static_cast<std::int64_t>(j);
            }
            if (best < 0) break;
            feas[p] = L;
            mind[p].push_back(static_cast<std::uint64_t>(static_cast<std::int64_t>(p) - best - 1));
        }
    }

    const bool classical = m.variant == Variant::classical;
    std::uint64_t best_total = std::numeric_limits<std::uint64_t>::max();

    // depth-first enumeration of every parsing
    auto rec = [&](auto&& self, std::size_t pos, std::uint64_t bits) -> void {
        if (pos == n) {
            best_total = std::min(best_total, bits);
            return;
        }
        if (classical) {
            std::size_t max_ell = std::min(feas[pos] + 1, n - pos);
            for (std::size_t ell = 1; ell <= max_ell; ++ell) {
                std::uint64_t d = ell == 1 ? 0 : mind[pos][ell - 2];
                std::uint64_t c = code_length(m.distance_codec, d) +
                                  code_length(m.length_codec, ell) +
                                  code_length(m.letter_codec, t[pos + ell - 1]);
                self(self, pos + ell, bits + c);
            }
        } else {
            self(self, pos + 1, bits + 1 + code_length(m.letter_codec, t[pos]));
            for (std::size_t ell = 1; ell <= feas[pos]; ++ell) {
                std::uint64_t c = 1 + code_length(m.distance_codec, mind[pos][ell - 1]) +
                                  code_length(m.length_codec, ell);
                self(self, pos + ell, bits + c);
            }
        }
    };
    rec(rec, 0, 0);
    return best_total;
}

}  // namespace lzrl
