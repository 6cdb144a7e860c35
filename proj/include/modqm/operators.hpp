#pragma once

// Operators on grid states: diagonal-in-position, diagonal-in-momentum,
// exact cyclic shift, dense matrix, and weighted products/sums thereof.
// The hermitian flag is an assertion; verify_hermitian checks it against
// a fixed set of pseudo-random states.

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "modqm/rng.hpp"
#include "modqm/wavefunction.hpp"

namespace modqm {

class LinearOperator;

namespace detail {

struct DiagPosition {
    std::vector<cplx> values;  // f(x_j)
};

struct DiagMomentum {
    std::vector<cplx> values;  // g(p_k), FFT bin order
};

struct Shift {
    long long steps = 0;  // (T psi)(x_j) = psi(x_{j+steps}) == e^{i p steps dx/hbar}
};

struct DenseKind {
    std::vector<cplx> a;  // row-major n x n, acts on amplitude vectors
    std::size_t n = 0;
};

struct ProductKind {
    std::vector<LinearOperator> factors;  // applied right-to-left
};

struct SumKind {
    std::vector<std::pair<cplx, LinearOperator>> terms;
};

}  // namespace detail

class LinearOperator {
  public:
    enum class Kind { diag_position, diag_momentum, shift, dense, product, sum };

    static LinearOperator diag_position(std::vector<cplx> values, bool hermitian) {
        LinearOperator op(Kind::diag_position, hermitian);
        op.diag_pos_ = std::make_shared<detail::DiagPosition>(detail::DiagPosition{std::move(values)});
        return op;
    }
    static LinearOperator diag_position(const Grid& g, const std::function<cplx(double)>& f,
                                        bool hermitian) {
        std::vector<cplx> v(g.n);
        for (std::size_t j = 0; j < g.n; ++j) v[j] = f(g.x(j));
        return diag_position(std::move(v), hermitian);
    }
    static LinearOperator diag_momentum(std::vector<cplx> values, bool hermitian) {
        LinearOperator op(Kind::diag_momentum, hermitian);
        op.diag_mom_ = std::make_shared<detail::DiagMomentum>(detail::DiagMomentum{std::move(values)});
        return op;
    }
    static LinearOperator diag_momentum(const Grid& g, const std::function<cplx(double)>& f,
                                        bool hermitian) {
        std::vector<cplx> v(g.n);
        for (std::size_t k = 0; k < g.n; ++k) v[k] = f(g.p(k));
        return diag_momentum(std::move(v), hermitian);
    }
    static LinearOperator shift(long long steps) {
        LinearOperator op(Kind::shift, steps == 0);
        op.shift_ = detail::Shift{steps};
        return op;
    }
    static LinearOperator dense(std::vector<cplx> row_major, std::size_t n, bool hermitian) {
        if (row_major.size() != n * n) throw std::invalid_argument("dense operator: bad size");
        LinearOperator op(Kind::dense, hermitian);
        op.dense_ = std::make_shared<detail::DenseKind>(detail::DenseKind{std::move(row_major), n});
        return op;
    }
    static LinearOperator product(std::vector<LinearOperator> factors, bool hermitian) {
        LinearOperator op(Kind::product, hermitian);
        op.product_ = std::make_shared<detail::ProductKind>(detail::ProductKind{std::move(factors)});
        return op;
    }
    static LinearOperator sum(std::vector<std::pair<cplx, LinearOperator>> terms, bool hermitian) {
        LinearOperator op(Kind::sum, hermitian);
        op.sum_ = std::make_shared<detail::SumKind>(detail::SumKind{std::move(terms)});
        return op;
    }

    static LinearOperator identity() {
        return shift(0);
    }
    static LinearOperator position(const Grid& g) {
        return diag_position(g, [](double x) { return cplx(x, 0.0); }, true);
    }
    static LinearOperator momentum(const Grid& g) {
        return diag_momentum(g, [](double p) { return cplx(p, 0.0); }, true);
    }

    Kind kind() const { return kind_; }
    bool hermitian() const { return hermitian_; }
    long long shift_steps() const {
        if (kind_ != Kind::shift) throw std::logic_error("not a shift operator");
        return shift_.steps;
    }

    WaveFunction apply(const WaveFunction& psi) const {
        switch (kind_) {
            case Kind::diag_position: {
                if (diag_pos_->values.size() != psi.size())
                    throw std::invalid_argument("diag_position size mismatch");
                WaveFunction out{psi.grid, std::vector<cplx>(psi.size())};
                for (std::size_t j = 0; j < psi.size(); ++j)
                    out.amp[j] = diag_pos_->values[j] * psi.amp[j];
                return out;
            }
            case Kind::diag_momentum: {
                if (diag_mom_->values.size() != psi.size())
                    throw std::invalid_argument("diag_momentum size mismatch");
                std::vector<cplx> a = psi.amp;
                dft_inplace(a);
                for (std::size_t k = 0; k < a.size(); ++k) a[k] *= diag_mom_->values[k];
                idft_inplace(a);
                return WaveFunction{psi.grid, std::move(a)};
            }
            case Kind::shift:
                return translate_steps(psi, shift_.steps);
            case Kind::dense: {
                if (dense_->n != psi.size()) throw std::invalid_argument("dense size mismatch");
                const std::size_t n = dense_->n;
                WaveFunction out{psi.grid, std::vector<cplx>(n, cplx(0.0, 0.0))};
                for (std::size_t r = 0; r < n; ++r) {
                    cplx s(0.0, 0.0);
                    const cplx* row = dense_->a.data() + r * n;
                    for (std::size_t c = 0; c < n; ++c) s += row[c] * psi.amp[c];
                    out.amp[r] = s;
                }
                return out;
            }
            case Kind::product: {
                WaveFunction cur = psi;
                for (auto it = product_->factors.rbegin(); it != product_->factors.rend(); ++it)
                    cur = it->apply(cur);
                return cur;
            }
            case Kind::sum: {
                WaveFunction out{psi.grid, std::vector<cplx>(psi.size(), cplx(0.0, 0.0))};
                for (const auto& [w, op] : sum_->terms) {
                    WaveFunction term = op.apply(psi);
                    for (std::size_t j = 0; j < psi.size(); ++j) out.amp[j] += w * term.amp[j];
                }
                return out;
            }
        }
        throw std::logic_error("unreachable");
    }

  private:
    explicit LinearOperator(Kind k, bool hermitian) : kind_(k), hermitian_(hermitian) {}

    Kind kind_;
    bool hermitian_;
    std::shared_ptr<detail::DiagPosition> diag_pos_;
    std::shared_ptr<detail::DiagMomentum> diag_mom_;
    detail::Shift shift_{};
    std::shared_ptr<detail::DenseKind> dense_;
    std::shared_ptr<detail::ProductKind> product_;
    std::shared_ptr<detail::SumKind> sum_;
};

// <psi|A|psi> / <psi|psi>
inline cplx expectation(const WaveFunction& psi, const LinearOperator& A) {
    const double n2 = norm2(psi);
    if (!(n2 > 0.0)) throw std::domain_error("expectation of a zero-norm state");
    return inner(psi, A.apply(psi)) / n2;
}

inline WaveFunction random_state(const Grid& g, RngStream& rng) {
    WaveFunction psi{g, std::vector<cplx>(g.n)};
    for (std::size_t j = 0; j < g.n; ++j) {
        auto [a, b] = rng.next_gaussian_pair();
        psi.amp[j] = cplx(a, b);
    }
    return normalized(std::move(psi));
}

// max |<u|A v> - conj(<v|A u>)| over a fixed pseudo-random test set
inline double hermiticity_defect(const LinearOperator& A, const Grid& g,
                                 std::size_t n_trials = 8, std::uint64_t seed = 7) {
    double worst = 0.0;
    for (std::size_t t = 0; t < n_trials; ++t) {
        auto r1 = make_stream(seed, 2 * t);
        auto r2 = make_stream(seed, 2 * t + 1);
        WaveFunction u = random_state(g, r1);
        WaveFunction v = random_state(g, r2);
        const cplx lhs = inner(u, A.apply(v));
        const cplx rhs = std::conj(inner(v, A.apply(u)));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

inline bool verify_hermitian(const LinearOperator& A, const Grid& g, double tol = 1e-10,
                             std::size_t n_trials = 8, std::uint64_t seed = 7) {
    return hermiticity_defect(A, g, n_trials, seed) < tol;
}

}  // namespace modqm
