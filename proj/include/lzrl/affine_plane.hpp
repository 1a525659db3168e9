#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "lzrl/errors.hpp"
#include "lzrl/gf2k.hpp"

namespace lzrl {

/// Affine plane AG(2,q) over GF(q): q^2 points, q(q+1) lines of q points,
/// every pair of distinct points on exactly one line. Point (x,y) has id
/// x*q + y. Realizes the Steiner system S(2, q, q^2).
struct AffinePlane {
    std::uint32_t q = 0;
    std::vector<std::vector<std::uint32_t>> lines;  // point ids, ascending within a line

    std::uint32_t points() const { return q * q; }
};

inline AffinePlane affine_plane(std::uint32_t q) {
    unsigned k;
    switch (q) {
        case 2: k = 1; break;
        case 4: k = 2; break;
        case 16: k = 4; break;
        case 256: k = 8; break;
        default: throw UnsupportedOrder("affine plane orders are 2, 4, 16, 256");
    }

    AffinePlane plane;
    plane.q = q;
    plane.lines.reserve(static_cast<std::size_t>(q) * (q + 1));

    // y = a*x + b, one line per (a, b)
    for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
            std::vector<std::uint32_t> line(q);
            for (std::uint32_t x = 0; x < q; ++x) {
                std::uint32_t y = gf_add(k, gf_mul(k, a, x), b);
                line[x] = x * q + y;
            }
            std::sort(line.begin(), line.end());
            plane.lines.push_back(std::move(line));
        }
    }
    // vertical lines x = c
    for (std::uint32_t c = 0; c < q; ++c) {
        std::vector<std::uint32_t> line(q);
        for (std::uint32_t y = 0; y < q; ++y) line[y] = c * q + y;
        plane.lines.push_back(std::move(line));
    }
    return plane;
}

}  // namespace lzrl
