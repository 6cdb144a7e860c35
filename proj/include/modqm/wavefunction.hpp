#pragma once

// Complex amplitude field on a Grid (units 1/sqrt(length)) plus the packet
// builders and elementwise algebra everything else is written against.
// Position and momentum representations are exact inverses of each other:
//   phi(p_k) = dx/sqrt(2*pi*hbar) * sum_j psi(x_j) e^{-i p_k x_j / hbar}
// so that sum |phi|^2 dp == sum |psi|^2 dx.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "modqm/fft.hpp"
#include "modqm/grid.hpp"

namespace modqm {

struct WaveFunction {
    Grid grid;
    std::vector<cplx> amp;

    std::size_t size() const { return amp.size(); }
};

inline void check_same_grid(const WaveFunction& a, const WaveFunction& b) {
    if (a.grid != b.grid) throw std::invalid_argument("states live on different grids");
}

inline cplx inner(const WaveFunction& a, const WaveFunction& b) {
    check_same_grid(a, b);
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a.amp[j]) * b.amp[j];
    return s * a.grid.dx();
}

inline double norm2(const WaveFunction& psi) {
    double s = 0.0;
    for (const auto& v : psi.amp) s += std::norm(v);
    return s * psi.grid.dx();
}

inline WaveFunction normalized(WaveFunction psi) {
    const double n2 = norm2(psi);
    if (!(n2 > 0.0)) throw std::domain_error("cannot normalize a zero-norm state");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& v : psi.amp) v *= s;
    return psi;
}

// --- representations -------------------------------------------------------

// momentum amplitudes in FFT bin order (grid.p(k) gives the physical momentum)
inline std::vector<cplx> to_momentum(const WaveFunction& psi) {
    const Grid& g = psi.grid;
    std::vector<cplx> a = psi.amp;
    dft_inplace(a);
    const double scale = g.dx() / std::sqrt(2.0 * detail::pi * g.hbar);
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double ang = -g.p(k) * g.x_min / g.hbar;
        a[k] *= scale * cplx(std::cos(ang), std::sin(ang));
    }
    return a;
}

inline WaveFunction to_position(const Grid& g, std::vector<cplx> mom) {
    if (mom.size() != g.n) throw std::invalid_argument("momentum amplitude size mismatch");
    const double scale = std::sqrt(2.0 * detail::pi * g.hbar) / g.dx();
    for (std::size_t k = 0; k < mom.size(); ++k) {
        const double ang = g.p(k) * g.x_min / g.hbar;
        mom[k] *= scale * cplx(std::cos(ang), std::sin(ang));
    }
    idft_inplace(mom);
    return WaveFunction{g, std::move(mom)};
}

// --- exact cyclic translation ----------------------------------------------

// (T_k psi)(x_j) = psi(x_{j+k}); realizes e^{i p (k dx)/hbar} with zero
// discretization error.
inline WaveFunction translate_steps(const WaveFunction& psi, long long steps) {
    const std::size_t n = psi.size();
    WaveFunction out{psi.grid, std::vector<cplx>(n)};
    for (std::size_t j = 0; j < n; ++j) out.amp[j] = psi.amp[psi.grid.wrap(static_cast<long long>(j) + steps)];
    return out;
}

// --- packet builders --------------------------------------------------------

// normalized Gaussian: exp(-(x-center)^2/(4 sigma^2)) e^{i momentum x/hbar} e^{i phase};
// sigma is the position standard deviation.
inline WaveFunction gaussian_packet(const Grid& g, double center, double sigma,
                                    double momentum = 0.0, double phase = 0.0) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_packet: sigma must be positive");
    if (center - 5.0 * sigma < g.x_min || center + 5.0 * sigma > g.x_max)
        throw std::invalid_argument("gaussian_packet: 5-sigma support leaves the box");
    WaveFunction psi{g, std::vector<cplx>(g.n)};
    for (std::size_t j = 0; j < g.n; ++j) {
        const double u = g.x(j) - center;
        const double env = std::exp(-u * u / (4.0 * sigma * sigma));
        const double ang = momentum * g.x(j) / g.hbar + phase;
        psi.amp[j] = env * cplx(std::cos(ang), std::sin(ang));
    }
    return normalized(std::move(psi));
}

// smooth compact-support bump: exp(-1/(1-u^2)) on |u|<1, u = 2(x-center)/width;
// exactly zero outside (center-width/2, center+width/2).
inline WaveFunction bump_packet(const Grid& g, double center, double width,
                                double momentum = 0.0, double phase = 0.0) {
    if (!(width > 0.0)) throw std::invalid_argument("bump_packet: width must be positive");
    if (center - 0.5 * width < g.x_min || center + 0.5 * width > g.x_max)
        throw std::invalid_argument("bump_packet: support leaves the box");
    WaveFunction psi{g, std::vector<cplx>(g.n, cplx(0.0, 0.0))};
    for (std::size_t j = 0; j < g.n; ++j) {
        const double u = 2.0 * (g.x(j) - center) / width;
        if (std::abs(u) >= 1.0) continue;
        const double env = std::exp(-1.0 / (1.0 - u * u));
        const double ang = momentum * g.x(j) / g.hbar + phase;
        psi.amp[j] = env * cplx(std::cos(ang), std::sin(ang));
    }
    return normalized(std::move(psi));
}

enum class EnvelopeKind { gaussian, bump };

// gaussian: width = position standard deviation; bump: width = full support
struct Envelope {
    EnvelopeKind kind = EnvelopeKind::gaussian;
    double width = 1.0;
};

inline WaveFunction make_packet(const Grid& g, const Envelope& env, double center,
                                double momentum = 0.0, double phase = 0.0) {
    if (env.kind == EnvelopeKind::gaussian)
        return gaussian_packet(g, center, env.width, momentum, phase);
    return bump_packet(g, center, env.width, momentum, phase);
}

// fraction of the norm sitting in the outermost cell at each box edge;
// packets whose tails exceed ~1e-12 here wrap around under evolution
inline double edge_tail_fraction(const WaveFunction& psi, std::size_t edge_cells = 2) {
    const double total = norm2(psi);
    if (!(total > 0.0)) return 0.0;
    double tail = 0.0;
    const std::size_t n = psi.size();
    for (std::size_t j = 0; j < std::min(edge_cells, n); ++j)
        tail += std::norm(psi.amp[j]) + std::norm(psi.amp[n - 1 - j]);
    return tail * psi.grid.dx() / total;
}

inline WaveFunction superpose(cplx c1, const WaveFunction& a, cplx c2, const WaveFunction& b,
                              bool renormalize) {
    check_same_grid(a, b);
    WaveFunction out{a.grid, std::vector<cplx>(a.size())};
    for (std::size_t j = 0; j < a.size(); ++j) out.amp[j] = c1 * a.amp[j] + c2 * b.amp[j];
    if (renormalize) return normalized(std::move(out));
    return out;
}

// --- moments ----------------------------------------------------------------

inline double mean_x(const WaveFunction& psi) {
    double s = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) s += std::norm(psi.amp[j]) * psi.grid.x(j);
    return s * psi.grid.dx() / norm2(psi);
}

inline double var_x(const WaveFunction& psi) {
    const double mu = mean_x(psi);
    double s = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double d = psi.grid.x(j) - mu;
        s += std::norm(psi.amp[j]) * d * d;
    }
    return s * psi.grid.dx() / norm2(psi);
}

inline double mean_p(const WaveFunction& psi) {
    const auto mom = to_momentum(psi);
    double s = 0.0, w = 0.0;
    for (std::size_t k = 0; k < mom.size(); ++k) {
        const double m = std::norm(mom[k]);
        s += m * psi.grid.p(k);
        w += m;
    }
    return s / w;
}

inline double var_p(const WaveFunction& psi) {
    const auto mom = to_momentum(psi);
    double s = 0.0, w = 0.0, mu = 0.0;
    for (std::size_t k = 0; k < mom.size(); ++k) {
        const double m = std::norm(mom[k]);
        mu += m * psi.grid.p(k);
        w += m;
    }
    mu /= w;
    for (std::size_t k = 0; k < mom.size(); ++k) {
        const double d = psi.grid.p(k) - mu;
        s += std::norm(mom[k]) * d * d;
    }
    return s / w;
}

inline std::vector<double> density(const WaveFunction& psi) {
    std::vector<double> rho(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) rho[j] = std::norm(psi.amp[j]);
    return rho;
}

}  // namespace modqm
