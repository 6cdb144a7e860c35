#pragma once

// H = p^2/2m + V(x) with V sampled on the grid, and the Strang-split
// second-order propagator exp(-iV dt/2h) exp(-iK dt/h) exp(-iV dt/2h).
// Adjacent half-V factors between steps are merged; the composition is
// identical, just fewer multiplies.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "modqm/potential.hpp"
#include "modqm/wavefunction.hpp"

namespace modqm {

struct Hamiltonian {
    double mass = 1.0;
    std::vector<double> potential;  // V(x_j)
};

inline Hamiltonian make_hamiltonian(const Grid& g, double mass, const Potential& v) {
    if (!(mass > 0.0)) throw std::invalid_argument("make_hamiltonian: mass must be positive");
    Hamiltonian h;
    h.mass = mass;
    h.potential.resize(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        h.potential[j] = v(g.x(j));
        if (!std::isfinite(h.potential[j]))
            throw std::invalid_argument("make_hamiltonian: potential not finite on the grid");
    }
    return h;
}

inline Hamiltonian free_hamiltonian(const Grid& g, double mass = 1.0) {
    return make_hamiltonian(g, mass, zero_potential());
}

// dt may be negative (time-reversed stepping is used by centered differences)
inline WaveFunction evolve(const WaveFunction& psi, const Hamiltonian& h, double dt,
                           std::size_t n_steps) {
    if (dt == 0.0) throw std::invalid_argument("evolve: dt must be nonzero");
    if (n_steps == 0) return psi;
    if (h.potential.size() != psi.size()) throw std::invalid_argument("evolve: grid mismatch");
    const Grid& g = psi.grid;
    const std::size_t n = g.n;

    std::vector<cplx> half_v(n), full_v(n), kin(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = -h.potential[j] * dt / (2.0 * g.hbar);
        half_v[j] = cplx(std::cos(a), std::sin(a));
        full_v[j] = half_v[j] * half_v[j];
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double p = g.p(k);
        const double a = -p * p * dt / (2.0 * h.mass * g.hbar);
        kin[k] = cplx(std::cos(a), std::sin(a));
    }

    std::vector<cplx> a = psi.amp;
    for (std::size_t j = 0; j < n; ++j) a[j] *= half_v[j];
    for (std::size_t s = 0; s < n_steps; ++s) {
        dft_inplace(a);
        for (std::size_t k = 0; k < n; ++k) a[k] *= kin[k];
        idft_inplace(a);
        const auto& v = (s + 1 == n_steps) ? half_v : full_v;
        for (std::size_t j = 0; j < n; ++j) a[j] *= v[j];
    }
    return WaveFunction{g, std::move(a)};
}

// convenience: propagate for a total time with steps of at most dt_max
inline WaveFunction evolve_for(const WaveFunction& psi, const Hamiltonian& h, double total_time,
                               double dt_max) {
    if (total_time == 0.0) return psi;
    const double steps_exact = std::abs(total_time) / dt_max;
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(steps_exact - 1e-12));
    const double dt = total_time / static_cast<double>(n_steps);
    return evolve(psi, h, dt, n_steps);
}

}  // namespace modqm
