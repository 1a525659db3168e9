#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "lzrl/text.hpp"

namespace lzrl {

/// Suffix array by prefix doubling with counting sort; O(n log n) time,
/// handles the integer alphabet directly.
inline std::vector<std::int32_t> suffix_array(const std::vector<Letter>& s) {
    const std::int32_t n = static_cast<std::int32_t>(s.size());
    std::vector<std::int32_t> sa(n), rank(n), tmp(n), aux(n);

    {
        const std::int32_t buckets =
            static_cast<std::int32_t>(*std::max_element(s.begin(), s.end())) + 2;
        std::vector<std::int32_t> cnt(buckets, 0);
        for (std::int32_t i = 0; i < n; ++i) cnt[s[i] + 1]++;
        for (std::int32_t i = 1; i < buckets; ++i) cnt[i] += cnt[i - 1];
        for (std::int32_t i = 0; i < n; ++i) sa[cnt[s[i]]++] = i;
        rank[sa[0]] = 0;
        for (std::int32_t i = 1; i < n; ++i)
            rank[sa[i]] = rank[sa[i - 1]] + (s[sa[i]] != s[sa[i - 1]] ? 1 : 0);
    }

    std::vector<std::int32_t> cnt(n + 1);
    for (std::int32_t len = 1; rank[sa[n - 1]] != n - 1; len <<= 1) {
        // second key: rank of the suffix starting len later (-inf when absent).
        // Suffixes with start >= n - len have empty second keys and go first.
        std::int32_t head = 0;
        for (std::int32_t i = n - len; i < n; ++i) aux[head++] = i;
        for (std::int32_t i = 0; i < n; ++i)
            if (sa[i] >= len) aux[head++] = sa[i] - len;

        // stable counting sort by first key
        std::fill(cnt.begin(), cnt.end(), 0);
        for (std::int32_t i = 0; i < n; ++i) cnt[rank[i] + 1]++;
        for (std::int32_t i = 1; i <= n; ++i) cnt[i] += cnt[i - 1];
        for (std::int32_t i = 0; i < n; ++i) sa[cnt[rank[aux[i]]]++] = aux[i];

        tmp[sa[0]] = 0;
        for (std::int32_t i = 1; i < n; ++i) {
            std::int32_t a = sa[i - 1], b = sa[i];
            bool same = rank[a] == rank[b];
            if (same) {
                std::int32_t ra = a + len < n ? rank[a + len] : -1;
                std::int32_t rb = b + len < n ? rank[b + len] : -1;
                same = ra == rb;
            }
            tmp[b] = tmp[a] + (same ? 0 : 1);
        }
        rank.swap(tmp);
    }
    return sa;
}

/// Kasai LCP: lcp[i] = longest common prefix of the suffixes at sa[i-1] and
/// sa[i]; lcp[0] = 0.
inline std::vector<std::int32_t> lcp_array(const std::vector<Letter>& s,
                                           const std::vector<std::int32_t>& sa) {
    const std::int32_t n = static_cast<std::int32_t>(s.size());
    std::vector<std::int32_t> rank(n), lcp(n, 0);
    for (std::int32_t i = 0; i < n; ++i) rank[sa[i]] = i;
    std::int32_t h = 0;
    for (std::int32_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        std::int32_t j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
        lcp[rank[i]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

/// lpf[i] = longest L such that s[i..i+L-1] also occurs starting at some
/// j < i (the occurrence may run past i). Stack sweep over the suffix array:
/// each suffix's best match is its nearest smaller-position neighbour on
/// either side in suffix order.
inline std::vector<std::int32_t> lpf_array(const std::vector<std::int32_t>& sa,
                                           const std::vector<std::int32_t>& lcp) {
    const std::int32_t n = static_cast<std::int32_t>(sa.size());
    std::vector<std::int32_t> lpf(n, 0);
    std::vector<std::pair<std::int32_t, std::int32_t>> stack;  // (position, lcp toward stack below)
    stack.reserve(64);
    for (std::int32_t r = 0; r <= n; ++r) {
        std::int32_t pos = r < n ? sa[r] : -1;
        std::int32_t cur = r < n ? lcp[r] : 0;
        while (!stack.empty() && stack.back().first > pos) {
            auto [top_pos, top_lcp] = stack.back();
            stack.pop_back();
            lpf[top_pos] = std::max(top_lcp, cur);
            cur = std::min(top_lcp, cur);
        }
        if (r < n) stack.emplace_back(pos, cur);
    }
    return lpf;
}

/// Quadratic reference scan used to cross-check the indexed machinery.
/// Returns (L, rightmost j achieving that L; -1 when L = 0).
inline std::vector<std::pair<std::int32_t, std::int32_t>> lpf_naive(
    const std::vector<Letter>& s) {
    const std::int32_t n = static_cast<std::int32_t>(s.size());
    std::vector<std::pair<std::int32_t, std::int32_t>> out(n, {0, -1});
    for (std::int32_t i = 0; i < n; ++i) {
        std::int32_t best = 0, best_j = -1;
        for (std::int32_t j = 0; j < i; ++j) {
            std::int32_t l = 0;
            while (i + l < n && s[j + l] == s[i + l]) ++l;
            if (l > best || (l == best && l > 0)) {
                best = l;
                best_j = j;  // later j wins ties, so the rightmost survives
            }
        }
        out[i] = {best, best == 0 ? -1 : best_j};
    }
    return out;
}

}  // namespace lzrl
