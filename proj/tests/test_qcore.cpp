// Grid / wavepacket / operator / propagator tests.
//
// Oracles used here:
//   - closed-form Gaussian moments and overlaps,
//   - exact dense propagator (eigendecomposition) on small grids,
//   - Richardson halving for the split-operator order.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "modqm/dense.hpp"
#include "modqm/hamiltonian.hpp"
#include "modqm/operators.hpp"
#include "modqm/wavefunction.hpp"

using namespace modqm;

namespace {
const double pi = modqm::detail::pi;
const cplx I(0.0, 1.0);

double l2_diff(const WaveFunction& a, const WaveFunction& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a.amp[j] - b.amp[j]);
    return std::sqrt(s * a.grid.dx());
}
}  // namespace

TEST_CASE("grid construction derives dx and dp; invalid inputs rejected") {
    Grid g = make_grid(1024, -50.0, 50.0, 1.0);
    CHECK(g.dx() == doctest::Approx(0.09765625).epsilon(1e-14));
    CHECK(g.dp() == doctest::Approx(2.0 * pi / 100.0).epsilon(1e-14));

    Grid g8 = make_grid(8, 0.0, 8.0, 1.0);
    CHECK(g8.dx() == doctest::Approx(1.0));
    CHECK(g8.dp() == doctest::Approx(2.0 * pi / 8.0));

    CHECK_THROWS_AS(make_grid(7, 0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1024, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1024, 0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(6, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("momentum lattice spans [-pi*hbar/dx, pi*hbar/dx) and wraps indices") {
    Grid g = make_grid(16, -4.0, 4.0, 2.0);
    double pmax = -1e300, pmin = 1e300;
    for (std::size_t k = 0; k < g.n; ++k) {
        pmax = std::max(pmax, g.p(k));
        pmin = std::min(pmin, g.p(k));
    }
    CHECK(pmin == doctest::Approx(-pi * g.hbar / g.dx()));
    CHECK(pmax == doctest::Approx(pi * g.hbar / g.dx() - g.dp()));
    CHECK(g.wrap(-1) == g.n - 1);
    CHECK(g.wrap(static_cast<long long>(g.n) + 3) == 3);
}

TEST_CASE("position<->momentum round trip is the identity below 1e-12") {
    for (std::size_t n : {12ul, 250ul, 1024ul, 1536ul}) {
        Grid g = make_grid(n, -7.0, 13.0, 0.7);
        auto rng = make_stream(11, n);
        WaveFunction psi = random_state(g, rng);
        WaveFunction back = to_position(g, to_momentum(psi));
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(back.amp[j] - psi.amp[j]));
        CHECK(worst < 1e-12);

        // Parseval: momentum density carries the same total mass
        double mass = 0.0;
        for (const auto& m : to_momentum(psi)) mass += std::norm(m);
        CHECK(mass * g.dp() == doctest::Approx(norm2(psi)).epsilon(1e-12));
    }
}

TEST_CASE("gaussian packet: moments, width, and global phase") {
    Grid g = make_grid(1024, -20.0, 20.0, 1.0);
    WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 0.0, 0.0);
    CHECK(std::abs(norm2(psi) - 1.0) < 1e-12);
    CHECK(std::abs(mean_x(psi)) < 1e-9);
    CHECK(std::abs(mean_p(psi)) < 1e-9);
    CHECK(std::sqrt(var_x(psi)) == doctest::Approx(1.0).epsilon(1e-6));

    WaveFunction moving = gaussian_packet(g, 2.0, 1.5, 3.0, 0.0);
    CHECK(mean_x(moving) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(mean_p(moving) == doctest::Approx(3.0).epsilon(1e-9));

    WaveFunction a = gaussian_packet(g, 0.0, 1.0, 3.0, pi);
    WaveFunction b = gaussian_packet(g, 0.0, 1.0, 3.0, 0.0);
    double dens_diff = 0.0;
    cplx ratio = a.amp[g.n / 2] / b.amp[g.n / 2];
    for (std::size_t j = 0; j < g.n; ++j)
        dens_diff = std::max(dens_diff, std::abs(std::norm(a.amp[j]) - std::norm(b.amp[j])));
    CHECK(dens_diff < 1e-15);
    CHECK(std::abs(ratio - std::exp(I * pi)) < 1e-12);

    CHECK_THROWS_AS(gaussian_packet(g, 19.0, 1.0), std::invalid_argument);
    CHECK(edge_tail_fraction(gaussian_packet(g, 0.0, 1.0)) < 1e-12);
    // a packet parked near the edge has visible tails there
    CHECK(edge_tail_fraction(gaussian_packet(g, 13.0, 1.4)) > 1e-12);
}

TEST_CASE("superpose: identity, equal-weight branches, cancellation") {
    Grid g = make_grid(512, -20.0, 20.0, 1.0);
    WaveFunction psi = gaussian_packet(g, -5.0, 1.0);
    WaveFunction phi = gaussian_packet(g, 5.0, 1.0);

    WaveFunction same = superpose(cplx(1.0, 0.0), psi, cplx(0.0, 0.0), phi, true);
    CHECK(l2_diff(same, psi) < 1e-12);

    // compact branches are exactly orthogonal, so each carries weight 1/2
    WaveFunction ba = bump_packet(g, -5.0, 6.0);
    WaveFunction bb = bump_packet(g, 5.0, 6.0);
    WaveFunction both = superpose(cplx(1.0, 0.0), ba, std::exp(I * 0.7), bb, true);
    double left = 0.0, right = 0.0;
    for (std::size_t j = 0; j < g.n; ++j)
        (g.x(j) < 0.0 ? left : right) += std::norm(both.amp[j]) * g.dx();
    CHECK(left == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(right == doctest::Approx(0.5).epsilon(1e-12));

    WaveFunction cancel = superpose(cplx(1.0, 0.0), psi, cplx(-1.0, 0.0), psi, false);
    CHECK(norm2(cancel) < 1e-25);
    CHECK_THROWS_AS(superpose(cplx(1.0, 0.0), psi, cplx(-1.0, 0.0), psi, true), std::domain_error);

    Grid g2 = make_grid(512, -21.0, 20.0, 1.0);
    WaveFunction other{g2, std::vector<cplx>(g2.n, cplx(0.1, 0.0))};
    CHECK_THROWS_AS(superpose(cplx(1.0, 0.0), psi, cplx(1.0, 0.0), other, false),
                    std::invalid_argument);
}

TEST_CASE("expectation: position mean, identity, zero-norm rejection") {
    Grid g = make_grid(1024, -20.0, 20.0, 1.0);
    WaveFunction psi = gaussian_packet(g, 2.0, 1.0);
    cplx x_mean = expectation(psi, LinearOperator::position(g));
    CHECK(std::abs(x_mean - cplx(2.0, 0.0)) < 1e-9);
    CHECK(std::abs(expectation(psi, LinearOperator::identity()) - cplx(1.0, 0.0)) < 1e-13);

    WaveFunction dead{g, std::vector<cplx>(g.n, cplx(0.0, 0.0))};
    CHECK_THROWS_AS(expectation(dead, LinearOperator::identity()), std::domain_error);
}

TEST_CASE("cyclic shift reveals the relative phase of two disjoint packets") {
    // box = 4L so the self-shift images land in empty space
    Grid g = make_grid(1024, -20.0, 20.0, 1.0);
    const double L = 10.0;
    const long long k = std::llround(L / g.dx());
    REQUIRE(k * g.dx() == doctest::Approx(L).epsilon(1e-15));

    for (double phi : {0.0, pi / 2, 1.234}) {
        // compact branches: the translated branch overlaps its partner exactly
        WaveFunction b1 = bump_packet(g, -L / 2, 8.0);
        WaveFunction b2 = bump_packet(g, +L / 2, 8.0);
        WaveFunction state = superpose(cplx(1.0, 0.0), b1, std::exp(I * phi), b2, true);
        cplx got = expectation(state, LinearOperator::shift(k));
        CHECK(std::abs(got - std::exp(I * phi) / 2.0) < 1e-13);
    }

    // Gaussian branches at sigma = L/10: the residual tail overlap
    // eps = exp(-L^2/(8 sigma^2)) shifts the result; closed form:
    //   <T_L> = (e^{i phi} + 2 eps) / (2 (1 + eps cos phi))
    const double sigma = L / 10.0;
    const double eps = std::exp(-L * L / (8.0 * sigma * sigma));
    for (double phi : {0.0, pi / 2, 1.234}) {
        WaveFunction g1 = gaussian_packet(g, -L / 2, sigma);
        WaveFunction g2 = gaussian_packet(g, +L / 2, sigma);
        WaveFunction state = superpose(cplx(1.0, 0.0), g1, std::exp(I * phi), g2, true);
        cplx got = expectation(state, LinearOperator::shift(k));
        cplx predicted = (std::exp(I * phi) + 2.0 * eps) / (2.0 * (1.0 + eps * std::cos(phi)));
        CHECK(std::abs(got - predicted) < 1e-9);
        CHECK(std::abs(got - std::exp(I * phi) / 2.0) < 4e-6);
    }
}

TEST_CASE("shift composition is exact index arithmetic") {
    Grid g = make_grid(64, 0.0, 64.0, 1.0);
    auto rng = make_stream(3);
    WaveFunction psi = random_state(g, rng);
    WaveFunction a = translate_steps(translate_steps(psi, 37), -90);
    WaveFunction b = translate_steps(psi, -53);
    for (std::size_t j = 0; j < g.n; ++j) CHECK(a.amp[j] == b.amp[j]);
}

TEST_CASE("hermiticity verification accepts symmetric combos and flags shifts") {
    Grid g = make_grid(128, -10.0, 10.0, 1.0);
    CHECK(verify_hermitian(LinearOperator::position(g), g));
    CHECK(verify_hermitian(LinearOperator::momentum(g), g));
    // cos(p a / hbar) as a symmetric sum of opposite shifts
    LinearOperator c = LinearOperator::sum(
        {{cplx(0.5, 0.0), LinearOperator::shift(5)}, {cplx(0.5, 0.0), LinearOperator::shift(-5)}},
        true);
    CHECK(verify_hermitian(c, g));
    CHECK_FALSE(verify_hermitian(LinearOperator::shift(5), g));
}

TEST_CASE("expectation of hermitian operators is real to 1e-10") {
    Grid g = make_grid(256, -12.0, 12.0, 1.0);
    auto rng = make_stream(17);
    for (int t = 0; t < 5; ++t) {
        WaveFunction psi = random_state(g, rng);
        for (const auto& op : {LinearOperator::position(g), LinearOperator::momentum(g)})
            CHECK(std::abs(expectation(psi, op).imag()) < 1e-10);
    }
}

TEST_CASE("free evolution: Ehrenfest drift and conserved momentum density") {
    Grid g = make_grid(1024, -30.0, 30.0, 1.0);
    const double x0 = -6.0, p0 = 2.0, m = 1.0, t = 3.0;
    WaveFunction psi = gaussian_packet(g, x0, 1.0, p0);
    Hamiltonian h = free_hamiltonian(g, m);
    WaveFunction out = evolve(psi, h, t, 1);
    CHECK(mean_x(out) == doctest::Approx(x0 + p0 * t / m).epsilon(1e-6));

    auto m0 = to_momentum(psi);
    auto mt = to_momentum(out);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.n; ++k)
        worst = std::max(worst, std::abs(std::norm(mt[k]) - std::norm(m0[k])));
    CHECK(worst < 1e-12);
}

TEST_CASE("harmonic evolution matches x0*cos(t) and the dense propagator") {
    Grid g = make_grid(256, -16.0, 16.0, 1.0);
    Hamiltonian h = make_hamiltonian(g, 1.0, harmonic_potential());
    const double x0 = 1.0, t = pi / 4.0;
    WaveFunction psi = gaussian_packet(g, x0, 1.0 / std::sqrt(2.0));
    WaveFunction split = evolve_for(psi, h, t, 1e-3);
    CHECK(mean_x(split) == doctest::Approx(x0 * std::cos(t)).epsilon(1e-5));

    Eigen::MatrixXcd u = dense_propagator(dense_hamiltonian(g, h), t, g.hbar);
    WaveFunction exact = apply_dense(g, u, psi);
    CHECK(l2_diff(split, exact) < 1e-6);
}

TEST_CASE("split-operator error is second order (Richardson slope 2 +- 0.1)") {
    Grid g = make_grid(256, -16.0, 16.0, 1.0);
    Hamiltonian h = make_hamiltonian(g, 1.0, harmonic_potential());
    WaveFunction psi = gaussian_packet(g, 1.0, 0.9, 0.5);
    const double t = 0.512;  // divisible by every dt below
    Eigen::MatrixXcd u = dense_propagator(dense_hamiltonian(g, h), t, g.hbar);
    WaveFunction exact = apply_dense(g, u, psi);

    std::vector<double> dts = {8e-3, 4e-3, 2e-3, 1e-3};
    std::vector<double> errs;
    for (double dt : dts) {
        const std::size_t steps = static_cast<std::size_t>(std::llround(t / dt));
        errs.push_back(l2_diff(evolve(psi, h, dt, steps), exact));
    }
    // least-squares slope of log(err) vs log(dt)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(dts.size());
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(dts[i]), ly = std::log(errs[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("split-operator at dt=1e-3 stays within 1e-6 of the exact propagator at t=1") {
    Grid g = make_grid(256, -16.0, 16.0, 1.0);
    Hamiltonian h = make_hamiltonian(g, 1.0, harmonic_potential());
    WaveFunction psi = gaussian_packet(g, 1.0, 1.0 / std::sqrt(2.0));
    WaveFunction split = evolve(psi, h, 1e-3, 1000);
    Eigen::MatrixXcd u = dense_propagator(dense_hamiltonian(g, h), 1.0, g.hbar);
    CHECK(l2_diff(split, apply_dense(g, u, psi)) < 1e-6);
}

TEST_CASE("norm drift stays below 1e-12 over 1e4 steps") {
    Grid g = make_grid(256, -16.0, 16.0, 1.0);
    Hamiltonian h = make_hamiltonian(g, 1.0, harmonic_potential());
    WaveFunction psi = gaussian_packet(g, 1.0, 1.0);
    WaveFunction out = evolve(psi, h, 1e-3, 10000);
    CHECK(std::abs(std::sqrt(norm2(out)) - 1.0) < 1e-12);
}

TEST_CASE("dense oracle: shift is a permutation, diag_position is diagonal") {
    Grid g = make_grid(16, 0.0, 16.0, 1.0);
    Eigen::MatrixXcd t = dense_of_operator(g, LinearOperator::shift(3));
    for (std::size_t r = 0; r < g.n; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            const double want = (c == (r + 3) % g.n) ? 1.0 : 0.0;
            CHECK(std::abs(t(r, c) - cplx(want, 0.0)) < 1e-15);
        }

    Eigen::MatrixXcd x = dense_of_operator(g, LinearOperator::position(g));
    for (std::size_t r = 0; r < g.n; ++r)
        for (std::size_t c = 0; c < g.n; ++c) {
            const cplx want = (r == c) ? cplx(g.x(r), 0.0) : cplx(0.0, 0.0);
            CHECK(std::abs(x(r, c) - want) < 1e-15);
        }

    Grid big = make_grid(1024, 0.0, 16.0, 1.0);
    CHECK_THROWS_AS(dense_of_operator(big, LinearOperator::shift(1)), std::invalid_argument);
}

TEST_CASE("operator products and sums compose as written") {
    Grid g = make_grid(128, -8.0, 8.0, 1.0);
    auto rng = make_stream(23);
    WaveFunction psi = random_state(g, rng);
    LinearOperator x = LinearOperator::position(g);
    LinearOperator p = LinearOperator::momentum(g);
    // product applies right-to-left: (x p) psi == x (p psi)
    WaveFunction lhs = LinearOperator::product({x, p}, false).apply(psi);
    WaveFunction rhs = x.apply(p.apply(psi));
    CHECK(l2_diff(lhs, rhs) < 1e-13);

    WaveFunction s = LinearOperator::sum({{cplx(2.0, 0.0), x}, {cplx(0.0, 1.0), p}}, false).apply(psi);
    WaveFunction manual{g, std::vector<cplx>(g.n)};
    WaveFunction px = p.apply(psi);
    WaveFunction xx = x.apply(psi);
    for (std::size_t j = 0; j < g.n; ++j) manual.amp[j] = 2.0 * xx.amp[j] + I * px.amp[j];
    CHECK(l2_diff(s, manual) < 1e-13);
}
