#pragma once

// Two-state vectors, weak values, the two-time density, the two-packet
// interference experiment, and the exact von Neumann pointer model.
//
// Pointer convention: coupling to a projector Pi translates the pointer
// coordinate by exactly g when Pi = 1. Idempotency gives the closed form
//   f(q) = <post|pre> chi(q) + <post|Pi|pre> (chi(q-g) - chi(q))
// for the unnormalized post-selected pointer amplitude, exact to all orders
// in g; the weak limit of the mean reading is g * Re <Pi>_w.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "modqm/hamiltonian.hpp"
#include "modqm/operators.hpp"
#include "modqm/wavefunction.hpp"

namespace modqm {

struct TwoStateVector {
    WaveFunction pre;
    WaveFunction post;
    cplx overlap;  // <post|pre>
};

inline TwoStateVector make_tsv(WaveFunction pre, WaveFunction post) {
    check_same_grid(pre, post);
    const cplx ov = inner(post, pre);
    if (std::abs(ov) <= 1e-12)
        throw std::invalid_argument("two-state vector: pre/post overlap vanishes");
    return TwoStateVector{std::move(pre), std::move(post), ov};
}

// <post|A|pre> / <post|pre>
inline cplx weak_value(const TwoStateVector& tsv, const LinearOperator& a) {
    return inner(tsv.post, a.apply(tsv.pre)) / tsv.overlap;
}

// weak value of the projector onto cells [j_lo, j_hi)
inline cplx weak_value_cells(const TwoStateVector& tsv, std::size_t j_lo, std::size_t j_hi) {
    cplx s(0.0, 0.0);
    for (std::size_t j = j_lo; j < j_hi && j < tsv.pre.size(); ++j)
        s += std::conj(tsv.post.amp[j]) * tsv.pre.amp[j];
    return s * tsv.pre.grid.dx() / tsv.overlap;
}

// finite-dimensional weak value (post^dag A pre) / (post^dag pre)
inline cplx weak_value(const Eigen::VectorXcd& post, const Eigen::VectorXcd& pre,
                       const Eigen::MatrixXcd& a) {
    const cplx den = (post.adjoint() * pre)(0, 0);
    if (std::abs(den) <= 1e-12) throw std::invalid_argument("weak value: vanishing overlap");
    return (post.adjoint() * (a * pre))(0, 0) / den;
}

// rho_tt(x) = <x|pre><post|x> / <post|pre>; rho_tt(x_j) dx equals the weak
// value of the cell projector at x_j, and the field integrates to exactly 1
inline std::vector<cplx> two_time_density(const TwoStateVector& tsv) {
    std::vector<cplx> rho(tsv.pre.size());
    for (std::size_t j = 0; j < rho.size(); ++j)
        rho[j] = tsv.pre.amp[j] * std::conj(tsv.post.amp[j]) / tsv.overlap;
    return rho;
}

// --- the two-packet pre/post-selected experiment ------------------------------

struct ExperimentSpec {
    Envelope envelope{EnvelopeKind::gaussian, 1.0};
    double L = 20.0;         // branch separation
    double p0 = 2.5;         // branch momentum (toward each other)
    double phi = 0.0;        // relative phase
    double mass = 1.0;
    bool phase_on_right = true;  // which branch carries e^{i phi}

    double meeting_time() const { return mass * L / (2.0 * p0); }
};

inline void validate_experiment(const Grid& g, const ExperimentSpec& spec) {
    if (!(spec.L > 0.0) || !(spec.p0 > 0.0) || !(spec.mass > 0.0))
        throw std::invalid_argument("experiment: L, p0, mass must be positive");
    if (spec.envelope.kind == EnvelopeKind::gaussian && spec.envelope.width > spec.L / 5.0)
        throw std::invalid_argument("experiment: sigma must satisfy sigma <= L/5");
    if (spec.envelope.kind == EnvelopeKind::bump && spec.envelope.width > spec.L)
        throw std::invalid_argument("experiment: bump width must not exceed L");
    if (spec.p0 * spec.L / g.hbar < 2.0 * detail::pi)
        throw std::invalid_argument("experiment: p0*L/hbar too small for fringes in the envelope");
}

struct Experiment {
    ExperimentSpec spec;
    Grid grid;
    WaveFunction pre0, post0;  // initial superposition and detector branch
    WaveFunction pre_T, post_T;
    std::vector<double> envelope_T;  // squared modulus of one evolved branch
    double sigma_T = 0.0;            // its position spread at the meeting time
    double branch_overlap = 0.0;     // |<branch_left|branch_right>| at t=0
    double post_selection_probability = 0.0;
};

inline Experiment build_experiment(const Grid& g, const ExperimentSpec& spec) {
    validate_experiment(g, spec);
    const double phi_l = spec.phase_on_right ? 0.0 : spec.phi;
    const double phi_r = spec.phase_on_right ? spec.phi : 0.0;
    WaveFunction left = make_packet(g, spec.envelope, -spec.L / 2.0, +spec.p0, phi_l);
    WaveFunction right = make_packet(g, spec.envelope, +spec.L / 2.0, -spec.p0, phi_r);

    Experiment ex;
    ex.spec = spec;
    ex.grid = g;
    ex.branch_overlap = std::abs(inner(left, right));
    if (ex.branch_overlap > 1e-8)
        throw std::invalid_argument("experiment: branches are not initially disjoint");
    ex.pre0 = superpose(cplx(1.0, 0.0), left, cplx(1.0, 0.0), right, true);
    ex.post0 = right;  // the detector branch, normalized by construction

    const Hamiltonian h = free_hamiltonian(g, spec.mass);
    const double t = spec.meeting_time();
    ex.pre_T = evolve(ex.pre0, h, t, 1);
    ex.post_T = evolve(ex.post0, h, t, 1);
    WaveFunction envelope_state = evolve(left, h, t, 1);
    ex.envelope_T = density(envelope_state);
    ex.sigma_T = std::sqrt(var_x(envelope_state));
    ex.post_selection_probability = std::norm(inner(ex.post_T, ex.pre_T));
    return ex;
}

// reference curve Re rho_tt = 2 |E_T(x)|^2 cos^2(p0 x/hbar -+ phi/2)
inline std::vector<double> reference_two_time_real(const Experiment& ex) {
    std::vector<double> ref(ex.grid.n);
    const double sign = ex.spec.phase_on_right ? 1.0 : -1.0;
    for (std::size_t j = 0; j < ex.grid.n; ++j) {
        const double c =
            std::cos(ex.spec.p0 * ex.grid.x(j) / ex.grid.hbar - sign * ex.spec.phi / 2.0);
        ref[j] = 2.0 * ex.envelope_T[j] * c * c;
    }
    return ref;
}

// --- von Neumann pointer ------------------------------------------------------

struct PointerModel {
    double g = 0.1;          // pointer shift for Pi = 1 (time-integrated coupling)
    double sigma_q = 1.0;    // initial pointer spread
    std::size_t n_q = 4097;  // reading grid resolution
    double span_sigmas = 8.0;

    double weak_ratio() const { return g / sigma_q; }
};

inline void validate_pointer(const PointerModel& m) {
    if (!(m.sigma_q > 0.0)) throw std::invalid_argument("pointer: sigma_q must be positive");
    if (m.g < 0.0) throw std::invalid_argument("pointer: g must be non-negative");
    if (m.n_q < 64) throw std::invalid_argument("pointer: reading grid too coarse");
}

struct PositionWindow {
    double lo = 0.0;
    double hi = 0.0;

    double center() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

struct PointerDistribution {
    double prob = 0.0;  // post-selection probability
    double q0 = 0.0, dq = 0.0;
    std::vector<double> pdf;  // conditional reading density, sum(pdf)*dq = 1
    std::vector<double> cdf;  // cdf[j] = P(reading <= q0 + (j+1/2) dq)
    cplx window_amplitude;    // <post|Pi|pre>
    cplx weak_val;            // <post|Pi|pre> / <post|pre>

    double mean() const {
        double s = 0.0;
        for (std::size_t j = 0; j < pdf.size(); ++j)
            s += (q0 + static_cast<double>(j) * dq) * pdf[j];
        return s * dq;
    }

    // inverse CDF over the piecewise-constant cell masses
    double sample(double u) const {
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t j = static_cast<std::size_t>(it - cdf.begin());
        if (j >= cdf.size()) return q0 + static_cast<double>(cdf.size() - 1) * dq;
        const double prev = (j == 0) ? 0.0 : cdf[j - 1];
        const double cell = cdf[j] - prev;
        const double frac = (cell > 0.0) ? (u - prev) / cell : 0.5;
        return q0 + (static_cast<double>(j) - 0.5 + frac) * dq;
    }
};

inline cplx window_amplitude(const TwoStateVector& tsv, const PositionWindow& w) {
    const Grid& g = tsv.pre.grid;
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.x(j);
        if (x >= w.lo && x < w.hi) s += std::conj(tsv.post.amp[j]) * tsv.pre.amp[j];
    }
    return s * g.dx();
}

namespace detail {

inline PointerDistribution pointer_distribution_from_amplitudes(cplx overlap, cplx amp_b,
                                                                const PointerModel& m) {
    validate_pointer(m);
    PointerDistribution out;
    out.window_amplitude = amp_b;
    out.weak_val = amp_b / overlap;
    const double half = m.span_sigmas * m.sigma_q + std::max(m.g, 0.0);
    out.q0 = -half;
    out.dq = 2.0 * half / static_cast<double>(m.n_q - 1);
    out.pdf.resize(m.n_q);
    // chi normalized on the reading grid so completeness is exact discretely
    double chi_norm = 0.0;
    std::vector<double> chi(m.n_q), chi_g(m.n_q);
    for (std::size_t j = 0; j < m.n_q; ++j) {
        const double q = out.q0 + static_cast<double>(j) * out.dq;
        chi[j] = std::exp(-q * q / (4.0 * m.sigma_q * m.sigma_q));
        chi_norm += chi[j] * chi[j];
    }
    chi_norm = 1.0 / std::sqrt(chi_norm * out.dq);
    for (std::size_t j = 0; j < m.n_q; ++j) {
        const double q = out.q0 + static_cast<double>(j) * out.dq;
        chi[j] *= chi_norm;
        chi_g[j] = chi_norm * std::exp(-(q - m.g) * (q - m.g) / (4.0 * m.sigma_q * m.sigma_q));
    }
    const cplx rest = overlap - amp_b;
    double total = 0.0;
    for (std::size_t j = 0; j < m.n_q; ++j) {
        const cplx f = rest * chi[j] + amp_b * chi_g[j];
        out.pdf[j] = std::norm(f);
        total += out.pdf[j];
    }
    total *= out.dq;
    out.prob = total;
    out.cdf.resize(m.n_q);
    double acc = 0.0;
    for (std::size_t j = 0; j < m.n_q; ++j) {
        out.pdf[j] /= total;
        acc += out.pdf[j] * out.dq;
        out.cdf[j] = acc;
    }
    out.cdf.back() = 1.0;
    return out;
}

}  // namespace detail

inline PointerDistribution pointer_distribution(const TwoStateVector& tsv,
                                                const PositionWindow& w, const PointerModel& m) {
    return detail::pointer_distribution_from_amplitudes(tsv.overlap, window_amplitude(tsv, w), m);
}

// general-operator variant; rejects operators that are not projectors
inline PointerDistribution pointer_distribution(const TwoStateVector& tsv,
                                                const LinearOperator& pi, const PointerModel& m) {
    if (!pi.hermitian()) throw std::invalid_argument("pointer coupling: operator must be a projector");
    WaveFunction once = pi.apply(tsv.pre);
    WaveFunction twice = pi.apply(once);
    double defect = 0.0;
    for (std::size_t j = 0; j < once.size(); ++j)
        defect = std::max(defect, std::abs(twice.amp[j] - once.amp[j]));
    if (defect > 1e-10)
        throw std::invalid_argument("pointer coupling: operator must be a projector");
    return detail::pointer_distribution_from_amplitudes(tsv.overlap, inner(tsv.post, once), m);
}

}  // namespace modqm
