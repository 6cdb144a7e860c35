#pragma once

// Counter-based random streams: every draw is a pure function of
// (seed, stream, counter), so trials can run in any order or thread and
// still reproduce bit-identically.

#include <cmath>
#include <cstdint>
#include <utility>

#include "modqm/fft.hpp"

namespace modqm {

namespace detail {

// SplitMix64 finalizer (Stafford mix13)
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (0x9e3779b97f4a7c15ULL + b + (a << 6) + (a >> 2)));
}

}  // namespace detail

struct RngStream {
    std::uint64_t key = 0;
    std::uint64_t counter = 0;

    std::uint64_t next_u64() { return detail::mix64(key ^ detail::mix64(counter++)); }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // standard normal pair (Box-Muller)
    std::pair<double, double> next_gaussian_pair() {
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * detail::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }
};

inline RngStream make_stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t key = detail::mix_combine(detail::mix_combine(seed, a), b);
    return RngStream{key, 0};
}

}  // namespace modqm
