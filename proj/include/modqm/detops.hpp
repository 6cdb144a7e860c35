#pragma once

// Deterministic-operator algebra: eigenoperator verification, the
// (n-1)^2 + 1 state-adapted operator basis for finite-dimensional states,
// and the two-slit sigma trio built from cos(pL/hbar), sin(pL/hbar) and the
// square wave sq(x) = sin(pi x/L)/|sin(pi x/L)|.
//
// The trio lives on a periodic box of width exactly 2L: there the two
// translations e^{+-ipL/hbar} coincide as the half-box cyclic shift, the
// two-packet subspace is invariant, and the spin-half algebra is exact.

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modqm/dense.hpp"
#include "modqm/operators.hpp"
#include "modqm/rng.hpp"
#include "modqm/wavefunction.hpp"

namespace modqm {

struct FiniteState {
    Eigen::VectorXcd v;

    std::size_t dim() const { return static_cast<std::size_t>(v.size()); }
};

inline FiniteState make_finite_state(Eigen::VectorXcd v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw std::invalid_argument("finite state: zero vector");
    v /= n;
    return FiniteState{std::move(v)};
}

inline FiniteState random_finite_state(std::size_t dim, RngStream& rng) {
    Eigen::VectorXcd v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        auto [a, b] = rng.next_gaussian_pair();
        v(static_cast<Eigen::Index>(i)) = cplx(a, b);
    }
    return make_finite_state(std::move(v));
}

inline bool is_hermitian_matrix(const Eigen::MatrixXcd& a, double tol = 1e-12) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff() < tol;
}

struct DeterministicCheck {
    bool deterministic = false;
    std::optional<double> eigenvalue;  // present iff deterministic
    double residual = 0.0;             // ||A v - <A> v||
};

// A is deterministic on v when v is an eigenstate: A v = a v
inline DeterministicCheck is_deterministic(const Eigen::MatrixXcd& a, const FiniteState& state,
                                           double tol = 1e-10) {
    if (a.rows() != a.cols() || static_cast<std::size_t>(a.rows()) != state.dim())
        throw std::invalid_argument("is_deterministic: dimension mismatch");
    if (!is_hermitian_matrix(a, 1e-10))
        throw std::invalid_argument("is_deterministic: operator is not Hermitian");
    const double mean = (state.v.adjoint() * a * state.v)(0, 0).real();
    DeterministicCheck out;
    out.residual = (a * state.v - mean * state.v).norm();
    out.deterministic = out.residual < tol;
    if (out.deterministic) out.eigenvalue = mean;
    return out;
}

struct DeterministicSet {
    FiniteState state;
    std::vector<Eigen::MatrixXcd> operators;
    std::vector<double> eigenvalues;

    std::size_t count() const { return operators.size(); }
};

// state-adapted construction: the projector onto the state (eigenvalue 1)
// plus the (d-1)^2 traceless-in-no-particular-way Hermitian generators of the
// unitary algebra of the orthogonal complement (each annihilating the state)
inline DeterministicSet deterministic_basis(const FiniteState& state) {
    const std::size_t d = state.dim();
    if (d < 2) throw std::invalid_argument("deterministic_basis: dim must be >= 2");

    // orthonormal basis {v, w_1, ..., w_{d-1}} by pivoted Gram-Schmidt
    std::vector<Eigen::VectorXcd> basis;
    basis.push_back(state.v);
    for (std::size_t cand = 0; cand < d && basis.size() < d; ++cand) {
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(d);
        w(static_cast<Eigen::Index>(cand)) = cplx(1.0, 0.0);
        for (const auto& b : basis) w -= (b.adjoint() * w)(0, 0) * b;
        const double n = w.norm();
        if (n > 1e-8) basis.push_back(w / n);
    }
    if (basis.size() != d) throw std::runtime_error("deterministic_basis: basis completion failed");

    DeterministicSet set;
    set.state = state;
    set.operators.push_back(state.v * state.v.adjoint());
    set.eigenvalues.push_back(1.0);
    for (std::size_t i = 1; i < d; ++i) {
        set.operators.push_back(basis[i] * basis[i].adjoint());
        set.eigenvalues.push_back(0.0);
    }
    const cplx imag(0.0, 1.0);
    for (std::size_t i = 1; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            set.operators.push_back(basis[i] * basis[j].adjoint() + basis[j] * basis[i].adjoint());
            set.eigenvalues.push_back(0.0);
            set.operators.push_back(-imag * basis[i] * basis[j].adjoint() +
                                    imag * basis[j] * basis[i].adjoint());
            set.eigenvalues.push_back(0.0);
        }
    return set;
}

// max over the set of ||A_i v - a_i v||
inline double eigen_relation_residual(const DeterministicSet& set) {
    double worst = 0.0;
    for (std::size_t i = 0; i < set.count(); ++i)
        worst = std::max(worst,
                         (set.operators[i] * set.state.v - set.eigenvalues[i] * set.state.v).norm());
    return worst;
}

// max over pairs of ||(A_i A_j - A_j A_i) v||
inline double commutator_residual(const DeterministicSet& set) {
    double worst = 0.0;
    std::vector<Eigen::VectorXcd> images;
    images.reserve(set.count());
    for (const auto& a : set.operators) images.push_back(a * set.state.v);
    for (std::size_t i = 0; i < set.count(); ++i)
        for (std::size_t j = i + 1; j < set.count(); ++j)
            worst = std::max(worst,
                             (set.operators[i] * images[j] - set.operators[j] * images[i]).norm());
    return worst;
}

// max over pairs of ||A_i A_j v - a_i a_j v|| (closure under products on the state)
inline double product_closure_residual(const DeterministicSet& set) {
    double worst = 0.0;
    for (std::size_t i = 0; i < set.count(); ++i)
        for (std::size_t j = 0; j < set.count(); ++j) {
            Eigen::VectorXcd w = set.operators[i] * (set.operators[j] * set.state.v) -
                                 set.eigenvalues[i] * set.eigenvalues[j] * set.state.v;
            worst = std::max(worst, w.norm());
        }
    return worst;
}

inline bool linearly_independent(const DeterministicSet& set, double tol = 1e-8) {
    const std::size_t d = set.state.dim();
    Eigen::MatrixXcd m(d * d, set.count());
    for (std::size_t c = 0; c < set.count(); ++c)
        m.col(static_cast<Eigen::Index>(c)) =
            Eigen::Map<const Eigen::VectorXcd>(set.operators[c].data(), d * d);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().minCoeff() > tol;
}

// --- the two-slit sigma trio --------------------------------------------------

struct SigmaTrio {
    LinearOperator sigma1 = LinearOperator::identity();
    LinearOperator sigma2 = LinearOperator::identity();
    LinearOperator sigma3 = LinearOperator::identity();
    Eigen::Matrix2cd r1, r2, r3;         // restrictions to the two-packet subspace
    std::vector<WaveFunction> basis;     // {packet in sq>0 half, its L-translate}
    double L = 0.0;
    long long steps = 0;
};

// square wave sign per grid cell, evaluated at cell centers offset by dx/2 so
// no grid point sits on a node; exact sign flip under a shift by L
inline std::vector<cplx> square_wave_signs(const Grid& g, double L) {
    std::vector<cplx> s(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double u = (g.x(j) + 0.5 * g.dx()) / L;
        if (std::abs(u - std::round(u)) < 1e-9)
            throw std::invalid_argument("square wave: grid point coincides with a node");
        const double frac = u - std::floor(u / 2.0) * 2.0;  // into [0, 2)
        s[j] = (frac < 1.0) ? cplx(1.0, 0.0) : cplx(-1.0, 0.0);
    }
    return s;
}

inline SigmaTrio sigma_trio(const Grid& g, double L,
                            const Envelope& env = Envelope{EnvelopeKind::bump, 0.0}) {
    const double ratio = L / g.dx();
    const long long k = std::llround(ratio);
    if (k < 1 || std::abs(ratio - static_cast<double>(k)) > 1e-9)
        throw std::invalid_argument("sigma_trio: L must be an integer multiple of dx");
    if (g.n != 2 * static_cast<std::size_t>(k))
        throw std::invalid_argument(
            "sigma_trio: box width must equal 2L (the half-box shift closes the algebra)");

    LinearOperator t_plus = LinearOperator::shift(k);
    LinearOperator t_minus = LinearOperator::shift(-k);
    const cplx half(0.5, 0.0), imag(0.0, 1.0);
    LinearOperator c = LinearOperator::sum({{half, t_plus}, {half, t_minus}}, true);
    LinearOperator s = LinearOperator::sum({{-imag * half, t_plus}, {imag * half, t_minus}}, true);
    LinearOperator sq = LinearOperator::diag_position(square_wave_signs(g, L), true);

    SigmaTrio trio;
    trio.L = L;
    trio.steps = k;
    trio.sigma3 = sq;
    trio.sigma1 = LinearOperator::sum(
        {{cplx(1.0, 0.0), c}, {cplx(-1.0, 0.0), LinearOperator::product({s, sq}, false)}}, true);
    trio.sigma2 = LinearOperator::sum(
        {{cplx(1.0, 0.0), s}, {imag, LinearOperator::product({c, sq}, false)}}, true);

    Envelope e = env;
    if (e.width <= 0.0) e.width = 0.8 * L;
    // packet in a positive half-period; with box [x_min, x_min+2L) the cell
    // centers make the second half positive when x_min = -L; place by sign
    const double center_pos = g.x_min + 1.5 * L;  // middle of [x_min + L, x_min + 2L)
    WaveFunction p_pos = make_packet(g, e, center_pos);
    // ensure the chosen half really carries sq = +1; otherwise use the other
    const auto signs = square_wave_signs(g, L);
    const std::size_t probe = g.wrap(static_cast<long long>((center_pos - g.x_min) / g.dx()));
    if (signs[probe].real() < 0.0) p_pos = make_packet(g, e, g.x_min + 0.5 * L);
    WaveFunction p_neg = translate_steps(p_pos, k);
    trio.basis = orthonormalize({p_pos, p_neg});
    Eigen::MatrixXcd m1 = restrict_to_subspace(trio.sigma1, trio.basis);
    Eigen::MatrixXcd m2 = restrict_to_subspace(trio.sigma2, trio.basis);
    Eigen::MatrixXcd m3 = restrict_to_subspace(trio.sigma3, trio.basis);
    trio.r1 = m1;
    trio.r2 = m2;
    trio.r3 = m3;
    return trio;
}

// residual of (sigma1 cos a + sigma2 sin a) acting on the two-packet state
// with relative phase a; the operator is deterministic with value 1 there
inline double phase_deterministic_check(const Grid& g, double L, double alpha,
                                        const Envelope& env = Envelope{EnvelopeKind::bump, 0.0}) {
    SigmaTrio trio = sigma_trio(g, L, env);
    const WaveFunction& p_pos = trio.basis[0];
    const WaveFunction& p_neg = trio.basis[1];
    WaveFunction state =
        superpose(cplx(1.0, 0.0), p_pos, std::exp(cplx(0.0, alpha)), p_neg, true);
    LinearOperator op = LinearOperator::sum(
        {{cplx(std::cos(alpha), 0.0), trio.sigma1}, {cplx(std::sin(alpha), 0.0), trio.sigma2}},
        true);
    WaveFunction image = op.apply(state);
    double s = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) s += std::norm(image.amp[j] - state.amp[j]);
    return std::sqrt(s * g.dx());
}

}  // namespace modqm
