#pragma once

// Modular momentum: expectation values of e^{i n p L / hbar} realized as
// exact cyclic shifts, the distribution of p folded modulo h/L, the complete
// uncertainty test, the nonlocal equation of motion residual, and the
// uncertainty lower bound Delta p >= hbar/L.
//
// Period convention: e^{ipL/hbar} is periodic in p with period h/L = 2*pi*hbar/L;
// all folding uses that period.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "modqm/hamiltonian.hpp"
#include "modqm/operators.hpp"
#include "modqm/wavefunction.hpp"

namespace modqm {

struct ModularSpec {
    double L = 0.0;
    long long steps = 0;       // L in grid steps (exact)
    std::size_t residues = 0;  // momentum lattice points per period = box/L
    double period = 0.0;       // 2*pi*hbar/L

    bool wraps(long long harmonic, std::size_t n_points) const {
        const long long total = harmonic >= 0 ? harmonic * steps : -harmonic * steps;
        return total >= static_cast<long long>(n_points);
    }
};

inline ModularSpec make_modular_spec(const Grid& g, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("modular spec: L must be positive");
    const double ratio = L / g.dx();
    const long long k = std::llround(ratio);
    if (k < 1 || std::abs(ratio - static_cast<double>(k)) > 1e-9)
        throw std::invalid_argument("modular spec: L must be an integer multiple of dx");
    if (g.n % static_cast<std::size_t>(k) != 0)
        throw std::invalid_argument("modular spec: box width must be an integer multiple of L");
    ModularSpec s;
    s.L = static_cast<double>(k) * g.dx();
    s.steps = k;
    s.residues = g.n / static_cast<std::size_t>(k);
    s.period = 2.0 * detail::pi * g.hbar / s.L;
    return s;
}

// <e^{i n p L / hbar}> via the exact cyclic shift by n*steps cells.
// Shifts beyond the box wrap modulo n_points (periodic box); query
// spec.wraps(n, grid.n) to warn.
inline cplx mod_expect(const WaveFunction& psi, const ModularSpec& spec, long long harmonic) {
    if (harmonic == 0) return cplx(1.0, 0.0);
    const double n2 = norm2(psi);
    if (!(n2 > 0.0)) throw std::domain_error("mod_expect of a zero-norm state");
    const WaveFunction shifted = translate_steps(psi, harmonic * spec.steps);
    return inner(psi, shifted) / n2;
}

struct FoldedDistribution {
    double period = 0.0;
    std::vector<double> edges;  // n_bins + 1 edges over [0, period]
    std::vector<double> mass;   // non-negative, sums to 1

    std::size_t n_bins() const { return mass.size(); }

    // a_n = sum_r mass_r e^{i n 2 pi r / n_bins}; exact dual of mod_expect
    // when the distribution is kept at full residue resolution
    cplx fourier_coefficient(long long n) const {
        cplx s(0.0, 0.0);
        const double w = 2.0 * detail::pi * static_cast<double>(n) / static_cast<double>(n_bins());
        for (std::size_t r = 0; r < mass.size(); ++r) {
            const double a = w * static_cast<double>(r);
            s += mass[r] * cplx(std::cos(a), std::sin(a));
        }
        return s;
    }
};

// momentum-space probability mass folded modulo the period 2*pi*hbar/L
inline FoldedDistribution folded_distribution(const WaveFunction& psi, const ModularSpec& spec,
                                              std::size_t n_bins) {
    if (n_bins == 0 || spec.residues % n_bins != 0)
        throw std::invalid_argument("folded_distribution: n_bins must divide residues per period");
    const Grid& g = psi.grid;
    const auto mom = to_momentum(psi);
    const std::size_t w = spec.residues;
    std::vector<double> residue_mass(w, 0.0);
    const long long ww = static_cast<long long>(w);
    for (std::size_t k = 0; k < g.n; ++k) {
        const long long m = (k < g.n / 2) ? static_cast<long long>(k)
                                          : static_cast<long long>(k) - static_cast<long long>(g.n);
        long long r = m % ww;
        if (r < 0) r += ww;
        residue_mass[static_cast<std::size_t>(r)] += std::norm(mom[k]) * g.dp();
    }
    const std::size_t group = w / n_bins;
    FoldedDistribution out;
    out.period = spec.period;
    out.mass.assign(n_bins, 0.0);
    double total = 0.0;
    for (std::size_t r = 0; r < w; ++r) {
        out.mass[r / group] += residue_mass[r];
        total += residue_mass[r];
    }
    if (!(total > 0.0)) throw std::domain_error("folded_distribution of a zero-norm state");
    for (auto& m : out.mass) m /= total;
    out.edges.resize(n_bins + 1);
    for (std::size_t b = 0; b <= n_bins; ++b)
        out.edges[b] = spec.period * static_cast<double>(b) / static_cast<double>(n_bins);
    return out;
}

struct CompleteUncertaintyReport {
    std::vector<cplx> harmonics;  // n = 1 .. n_max
    double max_abs = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// completely uncertain modular momentum <=> every harmonic vanishes
inline CompleteUncertaintyReport complete_uncertainty_check(const WaveFunction& psi,
                                                            const ModularSpec& spec,
                                                            std::size_t n_max, double tol) {
    if (n_max < 1) throw std::invalid_argument("complete_uncertainty_check: n_max must be >= 1");
    CompleteUncertaintyReport rep;
    rep.tol = tol;
    rep.harmonics.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const cplx h = mod_expect(psi, spec, static_cast<long long>(n));
        rep.harmonics.push_back(h);
        rep.max_abs = std::max(rep.max_abs, std::abs(h));
    }
    rep.pass = rep.max_abs < tol;
    return rep;
}

enum class BoundStatus { satisfied, violated, premise_not_met };

struct SpreadBoundResult {
    double delta_p = 0.0;
    double bound = 0.0;  // hbar / L
    double folded_sup_deviation = 0.0;
    BoundStatus status = BoundStatus::premise_not_met;
};

// premise: the folded distribution is uniform (complete uncertainty);
// then Delta p >= hbar/L must hold
inline SpreadBoundResult spread_bound_check(const WaveFunction& psi, const ModularSpec& spec,
                                            double premise_tol = 1e-6) {
    SpreadBoundResult res;
    res.bound = psi.grid.hbar / spec.L;
    const FoldedDistribution folded = folded_distribution(psi, spec, spec.residues);
    const double uniform = 1.0 / static_cast<double>(folded.n_bins());
    for (double m : folded.mass)
        res.folded_sup_deviation = std::max(res.folded_sup_deviation, std::abs(m - uniform));
    res.delta_p = std::sqrt(var_p(psi));
    if (res.folded_sup_deviation >= premise_tol) {
        res.status = BoundStatus::premise_not_met;
        return res;
    }
    res.status = (res.delta_p >= res.bound) ? BoundStatus::satisfied : BoundStatus::violated;
    return res;
}

// --- phase insensitivity of polynomial observables ---------------------------

// <x^m p^n> with the literal ordering and the symmetrized one
struct PolynomialMoments {
    cplx literal;
    cplx symmetrized;
};

inline PolynomialMoments polynomial_moment(const WaveFunction& psi, unsigned m, unsigned n) {
    const Grid& g = psi.grid;
    const double n2 = norm2(psi);
    WaveFunction pn = psi;
    if (n > 0) {
        std::vector<cplx> a = pn.amp;
        dft_inplace(a);
        for (std::size_t k = 0; k < g.n; ++k) a[k] *= std::pow(g.p(k), static_cast<double>(n));
        idft_inplace(a);
        pn.amp = std::move(a);
    }
    WaveFunction xmpn = pn;
    for (std::size_t j = 0; j < g.n; ++j)
        xmpn.amp[j] *= std::pow(g.x(j), static_cast<double>(m));
    PolynomialMoments out;
    out.literal = inner(psi, xmpn) / n2;
    // p^n (x^m psi)
    WaveFunction xm = psi;
    for (std::size_t j = 0; j < g.n; ++j)
        xm.amp[j] *= std::pow(g.x(j), static_cast<double>(m));
    if (n > 0) {
        std::vector<cplx> a = xm.amp;
        dft_inplace(a);
        for (std::size_t k = 0; k < g.n; ++k) a[k] *= std::pow(g.p(k), static_cast<double>(n));
        idft_inplace(a);
        xm.amp = std::move(a);
    }
    out.symmetrized = 0.5 * (out.literal + inner(psi, xm) / n2);
    return out;
}

struct PhaseInsensitivityResult {
    double max_dev_literal = 0.0;
    double max_dev_symmetrized = 0.0;
    double branch_overlap = 0.0;
};

// max over phase pairs of |<x^m p^n>_{phi_a} - <x^m p^n>_{phi_b}| for the
// superposition of two packets a distance L apart, freely evolved for time t.
// Rejects configurations whose branches overlap at time t (the disjointness
// premise of the claim).
inline PhaseInsensitivityResult polynomial_phase_insensitivity(
    const Grid& g, const Envelope& env, double L, unsigned m, unsigned n,
    const std::vector<double>& phis, double t, double mass = 1.0, double overlap_tol = 1e-10) {
    if (m > 4 || n > 4) throw std::invalid_argument("phase insensitivity: m,n <= 4");
    if (phis.size() < 2) throw std::invalid_argument("phase insensitivity: need >= 2 phases");
    WaveFunction b1 = make_packet(g, env, -L / 2.0);
    WaveFunction b2 = make_packet(g, env, +L / 2.0);
    const Hamiltonian h = free_hamiltonian(g, mass);
    if (t != 0.0) {
        b1 = evolve(b1, h, t, 1);
        b2 = evolve(b2, h, t, 1);
    }
    PhaseInsensitivityResult res;
    res.branch_overlap = std::abs(inner(b1, b2));
    if (res.branch_overlap > overlap_tol)
        throw std::invalid_argument("phase insensitivity: branches overlap at time t");
    std::vector<PolynomialMoments> vals;
    vals.reserve(phis.size());
    for (double phi : phis) {
        WaveFunction state =
            superpose(cplx(1.0, 0.0), b1, std::exp(cplx(0.0, phi)), b2, true);
        vals.push_back(polynomial_moment(state, m, n));
    }
    for (std::size_t a = 0; a < vals.size(); ++a)
        for (std::size_t b = a + 1; b < vals.size(); ++b) {
            res.max_dev_literal =
                std::max(res.max_dev_literal, std::abs(vals[a].literal - vals[b].literal));
            res.max_dev_symmetrized = std::max(res.max_dev_symmetrized,
                                               std::abs(vals[a].symmetrized - vals[b].symmetrized));
        }
    return res;
}

// --- nonlocal equation of motion ---------------------------------------------

struct EomResidualResult {
    double residual = 0.0;
    cplx time_derivative;           // centered difference of <T_L> under evolve
    cplx commutator_expectation;    // (i/hbar) <[V(x) - V(x+L)] T_L>
};

// d/dt <e^{ipL/hbar}> against (i/hbar) <[V(x)-V(x+L)] e^{ipL/hbar}>,
// both evaluated at psi; the commutator side is exact on the grid
inline EomResidualResult eom_residual(const WaveFunction& psi, const Hamiltonian& h,
                                      const ModularSpec& spec, double dt = 1e-4) {
    const Grid& g = psi.grid;
    const double n2 = norm2(psi);
    const WaveFunction plus = evolve(psi, h, dt, 1);
    const WaveFunction minus = evolve(psi, h, -dt, 1);
    const cplx tp = inner(plus, translate_steps(plus, spec.steps)) / norm2(plus);
    const cplx tm = inner(minus, translate_steps(minus, spec.steps)) / norm2(minus);

    EomResidualResult res;
    res.time_derivative = (tp - tm) / (2.0 * dt);

    WaveFunction shifted = translate_steps(psi, spec.steps);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double dv = h.potential[j] - h.potential[g.wrap(static_cast<long long>(j) + spec.steps)];
        shifted.amp[j] *= dv;
    }
    res.commutator_expectation = cplx(0.0, 1.0) / g.hbar * (inner(psi, shifted) / n2);
    res.residual = std::abs(res.time_derivative - res.commutator_expectation);
    return res;
}

}  // namespace modqm
