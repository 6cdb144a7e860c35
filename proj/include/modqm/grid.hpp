#pragma once

// Uniform periodic 1D lattice with its conjugate momentum lattice.
// Owns hbar and the box geometry; immutable after construction.

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "modqm/fft.hpp"

namespace modqm {

struct Grid {
    std::size_t n = 0;
    double x_min = 0.0;
    double x_max = 0.0;
    double hbar = 1.0;

    double width() const { return x_max - x_min; }
    double dx() const { return width() / static_cast<double>(n); }
    double dp() const { return 2.0 * detail::pi * hbar / width(); }

    double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx(); }

    // momentum of FFT bin k; lattice spans [-pi*hbar/dx, pi*hbar/dx)
    double p(std::size_t k) const {
        const auto half = n / 2;
        const double m = (k < half) ? static_cast<double>(k)
                                    : static_cast<double>(k) - static_cast<double>(n);
        return m * dp();
    }

    // position index arithmetic wraps modulo n
    std::size_t wrap(long long j) const {
        const long long nn = static_cast<long long>(n);
        long long r = j % nn;
        if (r < 0) r += nn;
        return static_cast<std::size_t>(r);
    }

    bool operator==(const Grid& o) const {
        return n == o.n && x_min == o.x_min && x_max == o.x_max && hbar == o.hbar;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

inline Grid make_grid(std::size_t n_points, double x_min, double x_max, double hbar = 1.0) {
    if (n_points < 8) throw std::invalid_argument("make_grid: n_points must be >= 8");
    if (n_points % 2 != 0) throw std::invalid_argument("make_grid: n_points must be even");
    if (!(x_max > x_min)) throw std::invalid_argument("make_grid: x_max must exceed x_min");
    if (!(hbar > 0.0)) throw std::invalid_argument("make_grid: hbar must be positive");
    return Grid{n_points, x_min, x_max, hbar};
}

}  // namespace modqm
