#pragma once

// Canned scenarios shared by the CLI and the acceptance suite: the
// equation-of-motion residual configurations and the remote-potential
// quantum/classical contrast.

#include "modqm/classical.hpp"
#include "modqm/modular.hpp"

namespace modqm {

struct EomScenario {
    Grid grid;
    ModularSpec spec;
    WaveFunction state;
    Hamiltonian hamiltonian;
};

// two compact branches in a gentle off-center well; the branches sit at
// different potential values so the modular phase factor rotates
inline EomScenario harmonic_eom_scenario() {
    EomScenario s{make_grid(1024, -20.0, 20.0, 1.0), {}, {}, {}};
    s.spec = make_modular_spec(s.grid, 10.0);
    WaveFunction b1 = bump_packet(s.grid, -5.0, 8.0);
    WaveFunction b2 = bump_packet(s.grid, +5.0, 8.0);
    s.state = superpose(cplx(1.0, 0.0), b1, std::exp(cplx(0.0, 0.7)), b2, true);
    s.hamiltonian = make_hamiltonian(s.grid, 1.0, harmonic_potential(0.04, 2.0));
    return s;
}

// a single packet four sigma away from a smooth barrier one translation
// length downrange: the packet never feels the barrier, its modular
// momentum does
inline EomScenario barrier_eom_scenario() {
    EomScenario s{make_grid(2048, -32.0, 32.0, 1.0), {}, {}, {}};
    const double L = 8.0, c = -12.0;
    s.spec = make_modular_spec(s.grid, L);
    s.state = gaussian_packet(s.grid, c, L / 4.0);
    s.hamiltonian =
        make_hamiltonian(s.grid, 1.0, barrier_potential(c + L - 1.0, c + L + 1.0, 0.5, 0.5));
    return s;
}

struct ContrastScenario {
    Grid grid;
    ModularSpec spec;
    WaveFunction branch_free, branch_on_plateau;
    WaveFunction state;
    Potential plateau;
    double v0 = 2.0;
    double run_time = 1.5;
    double dt = 1e-3;
};

// one branch on a wide flat plateau (zero force everywhere particles go, but
// nonzero potential), the other branch one translation length away in free
// space; classically nothing moves, the quantum modular phase factor rotates
inline ContrastScenario remote_potential_scenario() {
    ContrastScenario s{make_grid(2048, -96.0, 96.0, 1.0), {}, {}, {}, {}, {}};
    const double L = 24.0;
    s.spec = make_modular_spec(s.grid, L);
    s.branch_free = bump_packet(s.grid, -36.0, 8.0);
    s.branch_on_plateau = bump_packet(s.grid, -12.0, 8.0);
    s.state = superpose(cplx(1.0, 0.0), s.branch_free, cplx(1.0, 0.0), s.branch_on_plateau, true);
    s.plateau = plateau_potential(-22.5, -1.0, 1.5, s.v0);
    return s;
}

struct ContrastResult {
    cplx quantum_before, quantum_after;
    double quantum_drift = 0.0;
    double classical_drift = 0.0;
    ClassicalDriftTrace classical_trace;
};

inline ContrastResult run_contrast(const ContrastScenario& s, std::size_t n_particles,
                                   std::uint64_t seed) {
    ContrastResult r;
    Hamiltonian h = make_hamiltonian(s.grid, 1.0, s.plateau);
    const std::size_t steps = static_cast<std::size_t>(std::llround(s.run_time / s.dt));
    r.quantum_before = mod_expect(s.state, s.spec, 1);
    WaveFunction evolved = evolve(s.state, h, s.dt, steps);
    r.quantum_after = mod_expect(evolved, s.spec, 1);
    r.quantum_drift = std::abs(r.quantum_after - r.quantum_before);

    ClassicalEnsemble ensemble = sample_ensemble(
        {matched_component(s.branch_free, 0.5), matched_component(s.branch_on_plateau, 0.5)},
        n_particles, seed);
    const double p0 = 2.0 * detail::pi * s.grid.hbar / s.spec.L;
    r.classical_trace = classical_modular_drift(ensemble, s.plateau, p0, s.dt, steps);
    r.classical_drift = r.classical_trace.max_drift;
    return r;
}

}  // namespace modqm
