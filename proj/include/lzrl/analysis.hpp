#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "lzrl/generators.hpp"
#include "lzrl/optimal.hpp"
#include "lzrl/parser.hpp"
#include "lzrl/phrase_coding.hpp"

namespace lzrl {

inline constexpr std::uint64_t kExactOptimalLimit = 20000;

/// Phrase count of the greedy classical parsing.
inline std::uint64_t count_z(const Text& s) { return greedy_parse_classical(s).z(); }

namespace detail {

// log_sigma(z) in base-2 arithmetic
inline double log_base(double value, double base) { return std::log2(value) / std::log2(base); }

}  // namespace detail

/// min(z, log n / log log_sigma z). When log_sigma z <= 2 the second argument
/// is taken as infinite; the formulas are asymptotic and this is their domain
/// edge.
inline double bound_upper(std::uint64_t n, std::uint64_t sigma, std::uint64_t z) {
    if (n < 2 || sigma < 2 || z < sigma) throw DomainError("bound needs n >= 2, sigma >= 2, z >= sigma");
    double lz = detail::log_base(double(z), double(sigma));
    if (lz <= 2.0) return double(z);
    return std::min(double(z), std::log2(double(n)) / std::log2(lz));
}

/// min(z, log n / (log log_sigma z + log sigma)), guarded like bound_upper.
inline double bound_lower(std::uint64_t n, std::uint64_t sigma, std::uint64_t z) {
    if (n < 2 || sigma < 2 || z < sigma) throw DomainError("bound needs n >= 2, sigma >= 2, z >= sigma");
    double lz = detail::log_base(double(z), double(sigma));
    if (lz <= 2.0) return double(z);
    return std::min(double(z), std::log2(double(n)) / (std::log2(lz) + std::log2(double(sigma))));
}

/// Exact minimum of sum(log2 t_i) over positive integers t_1..t_k with
/// sum(t_i) >= t: attained by one part of size t-k+1 and k-1 ones.
inline double min_log_sum(std::uint64_t t, std::uint64_t k) {
    if (t < 1 || k < 1 || k > t) throw DomainError("min_log_sum needs 1 <= k <= t");
    return std::log2(double(t - k + 1));
}

struct CheckResult {
    bool ok = true;
    std::string detail;
    std::size_t index_a = 0, index_b = 0;
};

/// Distinctness of greedy phrases: classical parsings may repeat only the
/// final phrase; nonclassical parsings must have distinct f_i f_{i+1}[1].
inline CheckResult check_distinct_phrases(const Text& s, const Parsing& p) {
    std::unordered_set<std::string> seen;
    auto key_of = [&s](std::uint64_t start, std::uint64_t len) {
        std::string key;
        key.reserve(len * 4);
        for (std::uint64_t t = 0; t < len; ++t) {
            Letter c = s[start + t];
            key.append(reinterpret_cast<const char*>(&c), sizeof(Letter));
        }
        return key;
    };

    std::uint64_t pos = 0;
    if (p.variant == Variant::classical) {
        for (std::size_t i = 0; i + 1 < p.phrases.size(); ++i) {
            if (!seen.insert(key_of(pos, p.phrases[i].ell)).second)
                return {false, "duplicate phrase", i, 0};
            pos += p.phrases[i].ell;
        }
    } else {
        for (std::size_t i = 0; i + 1 < p.phrases.size(); ++i) {
            if (!seen.insert(key_of(pos, p.phrases[i].ell + 1)).second)
                return {false, "duplicate extended phrase", i, 0};
            pos += p.phrases[i].ell;
        }
    }
    return {};
}

/// Every phrase of p may overlap at most two phrases of the greedy parsing g
/// of the same text.
inline CheckResult check_overlap_bound(const Parsing& p, const Parsing& g) {
    std::vector<std::uint64_t> g_ends;
    g_ends.reserve(g.z());
    std::uint64_t pos = 0;
    for (const Phrase& f : g.phrases) {
        pos += f.ell;
        g_ends.push_back(pos);  // exclusive end
    }

    std::uint64_t start = 0;
    std::size_t gi = 0;
    for (std::size_t i = 0; i < p.phrases.size(); ++i) {
        std::uint64_t end = start + p.phrases[i].ell;  // exclusive
        while (gi < g_ends.size() && g_ends[gi] <= start) ++gi;
        std::size_t overlaps = 0;
        for (std::size_t gj = gi; gj < g_ends.size(); ++gj) {
            std::uint64_t g_start = gj == 0 ? 0 : g_ends[gj - 1];
            if (g_start >= end) break;
            ++overlaps;
        }
        if (overlaps > 2)
            return {false,
                    "phrase overlaps " + std::to_string(overlaps) + " greedy phrases", i, 0};
        start = end;
    }
    return {};
}

/// At least z - 2*sqrt(z) phrases of a greedy classical parsing must reach
/// length log_sigma(z) / 2.
inline CheckResult check_long_phrases(const Parsing& g, std::uint64_t sigma) {
    const double z = double(g.z());
    if (g.z() < 1) return {};
    double threshold = sigma >= 2 ? 0.5 * detail::log_base(z, double(sigma)) : 0.0;
    std::uint64_t long_count = 0;
    for (const Phrase& f : g.phrases)
        if (double(f.ell) >= threshold) ++long_count;
    double required = z - 2.0 * std::sqrt(z);
    if (double(long_count) < required)
        return {false,
                "only " + std::to_string(long_count) + " long phrases, need " +
                    std::to_string(required),
                0, 0};
    return {};
}

enum class MeasureMode { exact_opt, witness, both };

inline const char* mode_name(MeasureMode m) {
    switch (m) {
        case MeasureMode::exact_opt: return "exact_opt";
        case MeasureMode::witness: return "witness";
        case MeasureMode::both: return "both";
    }
    return "?";
}

/// Measured sizes and evaluated bound formulas for one instance.
struct Report {
    std::uint64_t n = 0, sigma = 0, z = 0;
    Variant variant = Variant::classical;
    Codec codec_d = Codec::elias_gamma, codec_l = Codec::elias_gamma,
          codec_c = Codec::elias_gamma;
    std::uint64_t bits_greedy = 0;
    std::optional<std::uint64_t> bits_opt;
    std::optional<std::uint64_t> bits_witness;
    std::string denominator;  // which size ratio_lb divides by
    double ratio_lb = 0.0;
    std::optional<double> bound_upper_value;
    std::optional<double> bound_lower_value;
};

inline Report measure(const Text& s, const CostModel& model, MeasureMode mode,
                      const GeneratedInstance* inst = nullptr) {
    if (inst && inst->variant != model.variant)
        throw InvalidParams("instance variant does not match the cost model");

    Report r;
    r.n = s.n();
    r.sigma = s.sigma();
    r.variant = model.variant;
    r.codec_d = model.distance_codec;
    r.codec_l = model.length_codec;
    r.codec_c = model.letter_codec;

    Parsing greedy = model.variant == Variant::classical ? greedy_parse_classical(s)
                                                         : greedy_parse_nonclassical(s);
    r.z = count_z(s);
    r.bits_greedy = encode_parsing(greedy, model).size();

    if (mode == MeasureMode::exact_opt || mode == MeasureMode::both) {
        if (s.n() > kExactOptimalLimit)
            throw InstanceTooLarge("exact optimal is limited to n <= " +
                                   std::to_string(kExactOptimalLimit));
        auto [p, bits] = optimal_bits_parse(s, model);
        r.bits_opt = bits;
    }
    if ((mode == MeasureMode::witness || mode == MeasureMode::both) && inst) {
        Parsing w = witness_parse(*inst);
        r.bits_witness = encode_parsing(w, model).size();
    }

    std::uint64_t denom = 0;
    if (r.bits_opt && r.bits_witness) {
        denom = std::min(*r.bits_opt, *r.bits_witness);
        r.denominator = *r.bits_opt <= *r.bits_witness ? "opt" : "witness";
    } else if (r.bits_opt) {
        denom = *r.bits_opt;
        r.denominator = "opt";
    } else if (r.bits_witness) {
        denom = *r.bits_witness;
        r.denominator = "witness";
    } else {
        denom = r.bits_greedy;
        r.denominator = "greedy";
    }
    r.ratio_lb = denom > 0 ? double(r.bits_greedy) / double(denom) : 0.0;

    if (r.n >= 2 && r.sigma >= 2 && r.z >= r.sigma) {
        r.bound_upper_value = bound_upper(r.n, r.sigma, r.z);
        r.bound_lower_value = bound_lower(r.n, r.sigma, r.z);
    }
    return r;
}

inline Report measure(const GeneratedInstance& inst, const CostModel& model, MeasureMode mode) {
    return measure(inst.text, model, mode, &inst);
}

}  // namespace lzrl
