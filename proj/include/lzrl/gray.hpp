#pragma once

#include <cstdint>
#include <vector>

#include "lzrl/errors.hpp"

namespace lzrl {

/// All tau^m words of length m over digits [0..tau-1], consecutive words
/// differing in exactly one position, last word = terminal^m.
struct GrayCodeSeq {
    std::uint32_t tau = 2;
    std::uint32_t m = 1;
    std::uint32_t terminal = 0;
    std::vector<std::vector<std::uint32_t>> words;
};

/// Word i (1-based) of the reversed reflected tau-ary Gray sequence with the
/// digits 0 and `terminal` swapped, so word tau^m lands on terminal^m.
/// Digit t of the standard modular code for index v is (v_t - v_{t+1}) mod tau
/// over the base-tau digits v_t of v; reversing the enumeration keeps the
/// one-position-step property and ends at the all-zero word.
inline std::vector<std::uint32_t> gray_word(std::uint32_t tau, std::uint32_t m,
                                            std::uint32_t terminal, std::uint64_t i) {
    if (tau < 2) throw InvalidParams("gray code needs tau >= 2");
    if (m < 1) throw InvalidParams("gray code needs m >= 1");
    if (terminal >= tau) throw InvalidParams("terminal digit outside the alphabet");

    std::uint64_t count = 1;
    for (std::uint32_t t = 0; t < m; ++t) {
        if (count > (std::uint64_t(1) << 62) / tau)
            throw InvalidParams("gray code index space overflows");
        count *= tau;
    }
    if (i < 1 || i > count) throw InvalidParams("gray word index out of range");

    std::uint64_t v = count - i;  // reversed enumeration
    std::vector<std::uint32_t> digits(m);
    for (std::uint32_t t = 0; t < m; ++t) {
        digits[t] = static_cast<std::uint32_t>(v % tau);
        v /= tau;
    }
    std::vector<std::uint32_t> word(m);
    for (std::uint32_t t = m; t-- > 0;) {
        std::uint32_t next = t + 1 < m ? digits[t + 1] : 0;
        std::uint32_t g = (digits[t] + tau - next) % tau;
        if (g == 0)
            g = terminal;
        else if (g == terminal)
            g = 0;
        word[m - 1 - t] = g;  // most significant digit first
    }
    return word;
}

inline GrayCodeSeq gray_sequence(std::uint32_t tau, std::uint32_t m, std::uint32_t terminal) {
    GrayCodeSeq seq;
    seq.tau = tau;
    seq.m = m;
    seq.terminal = terminal;
    std::uint64_t count = 1;
    for (std::uint32_t t = 0; t < m; ++t) {
        count *= tau;
        if (count > (std::uint64_t(1) << 26))
            throw InvalidParams("gray sequence too large to materialize");
    }
    seq.words.reserve(count);
    for (std::uint64_t i = 1; i <= count; ++i) seq.words.push_back(gray_word(tau, m, terminal, i));
    return seq;
}

}  // namespace lzrl
