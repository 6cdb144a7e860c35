#pragma once

// Brute-force dense route used as ground truth in tests: exact dense
// matrices of grid operators, Hamiltonians, and the exact propagator via
// eigendecomposition. Refuses grids beyond 512 points on purpose.

#include <Eigen/Dense>
#include <stdexcept>

#include "modqm/hamiltonian.hpp"
#include "modqm/operators.hpp"

namespace modqm {

inline constexpr std::size_t dense_oracle_max_points = 512;

inline void check_dense_size(std::size_t n) {
    if (n > dense_oracle_max_points)
        throw std::invalid_argument("dense oracle: grid exceeds the 512-point cap");
}

// matrix acting on raw amplitude vectors (columns = images of unit cells)
inline Eigen::MatrixXcd dense_of_operator(const Grid& g, const LinearOperator& op) {
    check_dense_size(g.n);
    const std::size_t n = g.n;
    Eigen::MatrixXcd m(n, n);
    WaveFunction e{g, std::vector<cplx>(n, cplx(0.0, 0.0))};
    for (std::size_t c = 0; c < n; ++c) {
        e.amp[c] = cplx(1.0, 0.0);
        WaveFunction col = op.apply(e);
        for (std::size_t r = 0; r < n; ++r) m(r, c) = col.amp[r];
        e.amp[c] = cplx(0.0, 0.0);
    }
    return m;
}

inline Eigen::MatrixXcd dense_hamiltonian(const Grid& g, const Hamiltonian& h) {
    check_dense_size(g.n);
    LinearOperator kinetic = LinearOperator::diag_momentum(
        g, [&](double p) { return cplx(p * p / (2.0 * h.mass), 0.0); }, true);
    Eigen::MatrixXcd m = dense_of_operator(g, kinetic);
    for (std::size_t j = 0; j < g.n; ++j) m(j, j) += h.potential[j];
    return m;
}

// exact U(t) = V exp(-i E t / hbar) V^dagger for a Hermitian matrix
inline Eigen::MatrixXcd dense_propagator(const Eigen::MatrixXcd& hmat, double t, double hbar) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hmat);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense propagator: eigensolve failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    Eigen::VectorXcd phases(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double a = -ev(i) * t / hbar;
        phases(i) = cplx(std::cos(a), std::sin(a));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline WaveFunction apply_dense(const Grid& g, const Eigen::MatrixXcd& m, const WaveFunction& psi) {
    if (static_cast<std::size_t>(m.rows()) != psi.size())
        throw std::invalid_argument("apply_dense: size mismatch");
    Eigen::VectorXcd v(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) v(j) = psi.amp[j];
    Eigen::VectorXcd w = m * v;
    WaveFunction out{g, std::vector<cplx>(psi.size())};
    for (std::size_t j = 0; j < psi.size(); ++j) out.amp[j] = w(j);
    return out;
}

// <b_i | A b_j> over an orthonormal basis (dx-weighted inner products)
inline Eigen::MatrixXcd restrict_to_subspace(const LinearOperator& op,
                                             const std::vector<WaveFunction>& basis) {
    const std::size_t d = basis.size();
    Eigen::MatrixXcd m(d, d);
    for (std::size_t c = 0; c < d; ++c) {
        WaveFunction img = op.apply(basis[c]);
        for (std::size_t r = 0; r < d; ++r) m(r, c) = inner(basis[r], img);
    }
    return m;
}

// Gram-Schmidt; throws if the vectors are linearly dependent on the grid
inline std::vector<WaveFunction> orthonormalize(std::vector<WaveFunction> vecs) {
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            const cplx c = inner(vecs[k], vecs[i]);
            for (std::size_t j = 0; j < vecs[i].size(); ++j)
                vecs[i].amp[j] -= c * vecs[k].amp[j];
        }
        vecs[i] = normalized(std::move(vecs[i]));
    }
    return vecs;
}

}  // namespace modqm
