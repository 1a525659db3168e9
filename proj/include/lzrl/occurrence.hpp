#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

#include "lzrl/suffix_array.hpp"
#include "lzrl/text.hpp"

namespace lzrl {

namespace detail {

/// Bit vector with O(1) rank1, one counter word per 64 bits.
class RankBits {
public:
    explicit RankBits(const std::vector<bool>& bits) {
        n_ = bits.size();
        words_.assign(n_ / 64 + 1, 0);
        for (std::size_t i = 0; i < n_; ++i)
            if (bits[i]) words_[i >> 6] |= std::uint64_t(1) << (i & 63);
        ranks_.assign(words_.size() + 1, 0);
        for (std::size_t w = 0; w < words_.size(); ++w)
            ranks_[w + 1] = ranks_[w] + static_cast<std::uint32_t>(__builtin_popcountll(words_[w]));
    }

    // number of 1 bits in [0, i)
    std::uint32_t rank1(std::size_t i) const {
        return ranks_[i >> 6] +
               static_cast<std::uint32_t>(
                   __builtin_popcountll(words_[i >> 6] & ((std::uint64_t(1) << (i & 63)) - 1)));
    }
    std::uint32_t rank0(std::size_t i) const { return static_cast<std::uint32_t>(i) - rank1(i); }
    std::uint32_t ones() const { return ranks_.back(); }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint32_t> ranks_;
};

/// Wavelet matrix over a sequence of values in [0, universe). Supports the
/// range-predecessor query needed for rightmost-occurrence selection.
class WaveletMatrix {
public:
    WaveletMatrix(std::vector<std::uint32_t> values, std::uint32_t universe) {
        levels_ = 1;
        while ((std::uint64_t(1) << levels_) < universe) ++levels_;
        layers_.reserve(levels_);
        zeros_.reserve(levels_);
        std::vector<std::uint32_t> cur = std::move(values);
        std::vector<std::uint32_t> next(cur.size());
        for (unsigned lvl = 0; lvl < levels_; ++lvl) {
            const unsigned shift = levels_ - 1 - lvl;
            std::vector<bool> bits(cur.size());
            std::size_t lo = 0;
            for (std::size_t i = 0; i < cur.size(); ++i)
                if (!((cur[i] >> shift) & 1u)) ++lo;
            zeros_.push_back(static_cast<std::uint32_t>(lo));
            std::size_t zi = 0, oi = lo;
            for (std::size_t i = 0; i < cur.size(); ++i) {
                bool b = (cur[i] >> shift) & 1u;
                bits[i] = b;
                if (b)
                    next[oi++] = cur[i];
                else
                    next[zi++] = cur[i];
            }
            layers_.emplace_back(bits);
            cur.swap(next);
        }
    }

    /// Largest value <= bound within positions [lo, hi); -1 when none.
    std::int64_t predecessor(std::uint32_t lo, std::uint32_t hi, std::uint32_t bound) const {
        if (lo >= hi) return -1;
        return pred_rec(0, lo, hi, bound, 0);
    }

private:
    std::int64_t range_max(unsigned lvl, std::uint32_t lo, std::uint32_t hi,
                           std::uint32_t prefix) const {
        // descend right-first; some branch is always non-empty
        for (; lvl < levels_; ++lvl) {
            const RankBits& b = layers_[lvl];
            std::uint32_t ones_lo = b.rank1(lo), ones_hi = b.rank1(hi);
            if (ones_hi > ones_lo) {
                prefix = (prefix << 1) | 1u;
                lo = zeros_[lvl] + ones_lo;
                hi = zeros_[lvl] + ones_hi;
            } else {
                prefix <<= 1;
                lo -= ones_lo;
                hi -= ones_hi;
            }
        }
        return prefix;
    }

    std::int64_t pred_rec(unsigned lvl, std::uint32_t lo, std::uint32_t hi, std::uint32_t bound,
                          std::uint32_t prefix) const {
        if (lo >= hi) return -1;
        if (lvl == levels_) return prefix;
        const RankBits& b = layers_[lvl];
        const unsigned shift = levels_ - 1 - lvl;
        std::uint32_t ones_lo = b.rank1(lo), ones_hi = b.rank1(hi);
        std::uint32_t left_lo = lo - ones_lo, left_hi = hi - ones_hi;
        if ((bound >> shift) & 1u) {
            std::int64_t r = pred_rec(lvl + 1, zeros_[lvl] + ones_lo, zeros_[lvl] + ones_hi,
                                      bound, (prefix << 1) | 1u);
            if (r >= 0) return r;
            if (left_lo < left_hi) return range_max(lvl + 1, left_lo, left_hi, prefix << 1);
            return -1;
        }
        return pred_rec(lvl + 1, left_lo, left_hi, bound, prefix << 1);
    }

    unsigned levels_ = 0;
    std::vector<RankBits> layers_;
    std::vector<std::uint32_t> zeros_;
};

/// Min segment tree over the lcp array with directional "first value below
/// threshold" descents.
class LcpTree {
public:
    explicit LcpTree(const std::vector<std::int32_t>& lcp) {
        n_ = lcp.size();
        size_ = 1;
        while (size_ < n_) size_ <<= 1;
        tree_.assign(2 * size_, INT32_MAX);
        for (std::size_t i = 0; i < n_; ++i) tree_[size_ + i] = lcp[i];
        for (std::size_t i = size_; i-- > 1;)
            tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
    }

    /// Largest t <= r with lcp[t] < threshold. lcp[0] = 0 guarantees a hit
    /// for any threshold >= 1.
    std::int32_t prev_below(std::int32_t r, std::int32_t threshold) const {
        std::int32_t res = -1;
        descend(1, 0, static_cast<std::int32_t>(size_) - 1, 0, r, threshold, /*rightmost=*/true,
                res);
        return res;
    }

    /// Smallest t >= r with lcp[t] < threshold, or n when none.
    std::int32_t next_below(std::int32_t r, std::int32_t threshold) const {
        std::int32_t res = -1;
        descend(1, 0, static_cast<std::int32_t>(size_) - 1, r, static_cast<std::int32_t>(n_) - 1,
                threshold, /*rightmost=*/false, res);
        return res < 0 ? static_cast<std::int32_t>(n_) : res;
    }

private:
    void descend(std::size_t node, std::int32_t node_lo, std::int32_t node_hi, std::int32_t lo,
                 std::int32_t hi, std::int32_t threshold, bool rightmost,
                 std::int32_t& res) const {
        if (res >= 0 || lo > hi || node_lo > hi || node_hi < lo) return;
        if (tree_[node] >= threshold) return;
        if (node_lo == node_hi) {
            res = node_lo;
            return;
        }
        std::int32_t mid = node_lo + (node_hi - node_lo) / 2;
        if (rightmost) {
            descend(2 * node + 1, mid + 1, node_hi, lo, hi, threshold, rightmost, res);
            descend(2 * node, node_lo, mid, lo, hi, threshold, rightmost, res);
        } else {
            descend(2 * node, node_lo, mid, lo, hi, threshold, rightmost, res);
            descend(2 * node + 1, mid + 1, node_hi, lo, hi, threshold, rightmost, res);
        }
    }

    std::size_t n_ = 0, size_ = 1;
    std::vector<std::int32_t> tree_;
};

/// Rightmost occurrence of s[p..p+len-1] with start <= limit, by KMP over the
/// prefix of s that can contain such a start. O(limit + len) per call.
inline std::int64_t rightmost_by_kmp(const std::vector<Letter>& s, std::size_t p,
                                     std::size_t len, std::size_t limit) {
    if (len == 0 || p == 0) return -1;
    const std::size_t n = s.size();
    std::vector<std::int32_t> fail(len, 0);
    for (std::size_t i = 1; i < len; ++i) {
        std::int32_t k = fail[i - 1];
        while (k > 0 && s[p + i] != s[p + k]) k = fail[k - 1];
        if (s[p + i] == s[p + k]) ++k;
        fail[i] = k;
    }
    const std::size_t scan_end = std::min(n, limit + len);  // match start <= limit
    std::int64_t best = -1;
    std::size_t k = 0;
    for (std::size_t i = 0; i < scan_end; ++i) {
        while (k > 0 && s[i] != s[p + k]) k = fail[k - 1];
        if (s[i] == s[p + k]) ++k;
        if (k == len) {
            best = static_cast<std::int64_t>(i + 1 - len);
            k = fail[k - 1];
        }
    }
    return best;
}

}  // namespace detail

/// Substring machinery over one text: suffix array, lcp, lpf, and rightmost
/// earlier-occurrence queries. The rank-select structures are built lazily,
/// so callers that only need lpf (or that batch few queries through the KMP
/// path) avoid the cost.
class OccurrenceIndex {
public:
    explicit OccurrenceIndex(const Text& s) : s_(&s.letters()) {
        sa_ = suffix_array(*s_);
        lcp_ = lcp_array(*s_, sa_);
        lpf_ = lpf_array(sa_, lcp_);
        rank_.resize(sa_.size());
        for (std::size_t r = 0; r < sa_.size(); ++r) rank_[sa_[r]] = static_cast<std::int32_t>(r);
    }

    const std::vector<std::int32_t>& lpf() const { return lpf_; }
    std::size_t n() const { return s_->size(); }

    /// Rightmost j < p with s[j..j+len-1] = s[p..p+len-1]; -1 when none.
    /// The source may overlap [p, p+len).
    std::int64_t rightmost_occurrence(std::size_t p, std::size_t len) const {
        if (len == 0 || p == 0) return -1;
        ensure_structures();
        std::int32_t r = rank_[p];
        std::int32_t lo = lcp_tree_->prev_below(r, static_cast<std::int32_t>(len));
        std::int32_t hi = lcp_tree_->next_below(r + 1, static_cast<std::int32_t>(len)) - 1;
        return wavelet_->predecessor(static_cast<std::uint32_t>(lo),
                                     static_cast<std::uint32_t>(hi) + 1,
                                     static_cast<std::uint32_t>(p - 1));
    }

    std::int64_t rightmost_occurrence_kmp(std::size_t p, std::size_t len) const {
        return detail::rightmost_by_kmp(*s_, p, len, p - 1);
    }

private:
    void ensure_structures() const {
        if (wavelet_) return;
        lcp_tree_ = std::make_unique<detail::LcpTree>(lcp_);
        std::vector<std::uint32_t> vals(sa_.begin(), sa_.end());
        wavelet_ = std::make_unique<detail::WaveletMatrix>(
            std::move(vals), static_cast<std::uint32_t>(std::max<std::size_t>(sa_.size(), 2)));
    }

    const std::vector<Letter>* s_;
    std::vector<std::int32_t> sa_, lcp_, lpf_, rank_;
    mutable std::unique_ptr<detail::LcpTree> lcp_tree_;
    mutable std::unique_ptr<detail::WaveletMatrix> wavelet_;
};

}  // namespace lzrl
