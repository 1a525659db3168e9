#pragma once

#include <cstdint>

#include "lzrl/errors.hpp"

namespace lzrl {

enum class GfOp { add, mul };

namespace detail {

// Reduction polynomials: x+1, x^2+x+1, x^4+x+1, x^8+x^4+x^3+x+1.
inline std::uint32_t gf_poly(unsigned k) {
    switch (k) {
        case 1: return 0x3;
        case 2: return 0x7;
        case 4: return 0x13;
        case 8: return 0x11B;
    }
    throw InvalidParams("GF(2^k) supported only for k in {1,2,4,8}");
}

}  // namespace detail

inline std::uint32_t gf_add(unsigned k, std::uint32_t a, std::uint32_t b) {
    detail::gf_poly(k);  // validates k
    if (a >> k || b >> k) throw InvalidParams("operand outside the field");
    return a ^ b;
}

inline std::uint32_t gf_mul(unsigned k, std::uint32_t a, std::uint32_t b) {
    std::uint32_t poly = detail::gf_poly(k);
    if (a >> k || b >> k) throw InvalidParams("operand outside the field");
    std::uint32_t r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> k) a ^= poly;
    }
    return r;
}

inline std::uint32_t gf_arith(unsigned k, GfOp op, std::uint32_t a, std::uint32_t b) {
    return op == GfOp::add ? gf_add(k, a, b) : gf_mul(k, a, b);
}

}  // namespace lzrl
