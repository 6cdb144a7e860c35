#pragma once

// Classical contrast oracle: phase-space ensembles with moments matched to a
// quantum packet, leapfrog integration, and the trajectory of the classical
// modular phase factor <e^{i 2 pi p / p0}> together with the Poisson-bracket
// prediction for its drift.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "modqm/potential.hpp"
#include "modqm/rng.hpp"
#include "modqm/wavefunction.hpp"

namespace modqm {

struct ClassicalEnsemble {
    std::vector<double> x;
    std::vector<double> p;
    double mass = 1.0;

    std::size_t size() const { return x.size(); }
};

// one mixture component of a phase-space Gaussian (Wigner-like)
struct PhaseSpaceGaussian {
    double mean_x = 0.0;
    double sd_x = 1.0;
    double mean_p = 0.0;
    double sd_p = 0.5;
    double weight = 1.0;
};

inline PhaseSpaceGaussian matched_component(const WaveFunction& psi, double weight = 1.0) {
    PhaseSpaceGaussian c;
    c.mean_x = mean_x(psi);
    c.sd_x = std::sqrt(var_x(psi));
    c.mean_p = mean_p(psi);
    c.sd_p = std::sqrt(var_p(psi));
    c.weight = weight;
    return c;
}

inline ClassicalEnsemble sample_ensemble(const std::vector<PhaseSpaceGaussian>& components,
                                         std::size_t n, std::uint64_t seed, double mass = 1.0) {
    if (components.empty()) throw std::invalid_argument("sample_ensemble: no components");
    if (n < 1000) throw std::invalid_argument("sample_ensemble: need >= 1e3 particles");
    double total_w = 0.0;
    for (const auto& c : components) total_w += c.weight;
    ClassicalEnsemble e;
    e.mass = mass;
    e.x.resize(n);
    e.p.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = make_stream(seed, 0xC1A55ULL, i);
        double pick = rng.next_double() * total_w;
        std::size_t c = 0;
        for (; c + 1 < components.size(); ++c) {
            if (pick < components[c].weight) break;
            pick -= components[c].weight;
        }
        const auto [z1, z2] = rng.next_gaussian_pair();
        e.x[i] = components[c].mean_x + components[c].sd_x * z1;
        e.p[i] = components[c].mean_p + components[c].sd_p * z2;
    }
    return e;
}

// kick-drift-kick leapfrog step
inline void leapfrog_step(ClassicalEnsemble& e, const Potential& v, double dt) {
    const std::size_t n = e.size();
    for (std::size_t i = 0; i < n; ++i) {
        e.p[i] -= 0.5 * dt * v.derivative(e.x[i]);
        e.x[i] += dt * e.p[i] / e.mass;
        e.p[i] -= 0.5 * dt * v.derivative(e.x[i]);
    }
}

inline cplx ensemble_modular_phase(const ClassicalEnsemble& e, double p0) {
    cplx s(0.0, 0.0);
    const double w = 2.0 * detail::pi / p0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double a = w * e.p[i];
        s += cplx(std::cos(a), std::sin(a));
    }
    return s / static_cast<double>(e.size());
}

struct ClassicalDriftTrace {
    std::vector<double> times;
    std::vector<cplx> modular_phase;   // <e^{i 2 pi p / p0}>
    std::vector<cplx> poisson_rate;    // -i (2 pi / p0) <V'(x) e^{i 2 pi p / p0}>
    double max_drift = 0.0;            // max |<...>(t) - <...>(0)|
};

// evolves a copy of the ensemble and records the modular phase factor and the
// Poisson-bracket drift prediction at every step
inline ClassicalDriftTrace classical_modular_drift(ClassicalEnsemble ensemble, const Potential& v,
                                                   double p0, double dt, std::size_t n_steps) {
    if (!(p0 > 0.0)) throw std::invalid_argument("classical_modular_drift: p0 must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("classical_modular_drift: dt must be positive");
    ClassicalDriftTrace trace;
    const double w = 2.0 * detail::pi / p0;
    auto poisson = [&]() {
        cplx s(0.0, 0.0);
        for (std::size_t i = 0; i < ensemble.size(); ++i) {
            const double a = w * ensemble.p[i];
            s += v.derivative(ensemble.x[i]) * cplx(std::cos(a), std::sin(a));
        }
        return cplx(0.0, -1.0) * w * s / static_cast<double>(ensemble.size());
    };
    trace.times.reserve(n_steps + 1);
    trace.modular_phase.reserve(n_steps + 1);
    trace.poisson_rate.reserve(n_steps + 1);
    trace.times.push_back(0.0);
    trace.modular_phase.push_back(ensemble_modular_phase(ensemble, p0));
    trace.poisson_rate.push_back(poisson());
    const cplx start = trace.modular_phase.front();
    for (std::size_t s = 1; s <= n_steps; ++s) {
        leapfrog_step(ensemble, v, dt);
        trace.times.push_back(static_cast<double>(s) * dt);
        trace.modular_phase.push_back(ensemble_modular_phase(ensemble, p0));
        trace.poisson_rate.push_back(poisson());
        trace.max_drift = std::max(trace.max_drift, std::abs(trace.modular_phase.back() - start));
    }
    return trace;
}

}  // namespace modqm
