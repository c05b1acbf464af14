#include "groundbound/billiard.hpp"
#include "groundbound/oracle.hpp"
#include "groundbound/quartic.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <chrono>
#include <cmath>

using namespace groundbound;

namespace {

double harmonic(std::span<const double> q) { return 0.5 * q[0] * q[0]; }

ScalarField quartic_potential() {
    const QuarticOscillator qo(1.0 / std::sqrt(2.0), -1, 8.0);
    return [qo](std::span<const double> q) { return qo.potential(q[0]); };
}

double dense_lowest(const std::vector<double> &diag, const std::vector<double> &off) {
    const auto n = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = diag[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            m(i, i + 1) = m(i + 1, i) = off[static_cast<std::size_t>(i)];
        }
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

Domain two_disks() {
    Domain d;
    d.dimension = 2;
    d.constraint = [](std::span<const double> q) {
        const double a = (q[0] + 0.5) * (q[0] + 0.5) + q[1] * q[1] - 0.09;
        const double b = (q[0] - 0.5) * (q[0] - 0.5) + q[1] * q[1] - 0.09;
        return std::min(a, b);
    };
    return d;
}

Domain unit_disk() {
    Domain d;
    d.dimension = 2;
    d.constraint = [](std::span<const double> q) { return q[0] * q[0] + q[1] * q[1] - 1.0; };
    return d;
}

} // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS((Grid1D{0.0, 1.0, 99}.validate()), InvalidArgument);
    CHECK_THROWS_AS((Grid1D{1.0, 1.0, 200}.validate()), InvalidArgument);
    CHECK_THROWS_AS((Grid1D{0.0, kInf, 200}.validate()), InvalidArgument);
    CHECK((Grid1D{0.0, 1.0, 101}.spacing()) == doctest::Approx(0.01));
    CHECK_THROWS_AS((Grid2D{{-1.0, 1.0}, {-1.0, 1.0}, 9}.validate()), InvalidArgument);
    const Grid2D g{{-0.9, 1.1}, {-1.0, 1.0}, 101};
    CHECK(g.spacing() == doctest::Approx(0.02));
    CHECK(g.nx() == 101);
    CHECK(g.ny() == 101);
}

TEST_CASE("property: Sturm bisection agrees with a dense eigensolver") {
    gbtest::Gen gen(51);
    for (int k = 0; k < 30; ++k) {
        const std::size_t n = static_cast<std::size_t>(gen.integer(2, 120));
        const auto diag = gen.vector(n, -5.0, 5.0);
        const auto off = gen.vector(n - 1, -2.0, 2.0);
        const double e = lowest_eigenvalue_tridiagonal(diag, off);
        CHECK(e == doctest::Approx(dense_lowest(diag, off)).epsilon(1e-12));
        CHECK(sturm_count(diag, off, e - 1e-9) == 0);
        CHECK(sturm_count(diag, off, e + 1e-9) >= 1);
    }
    const std::vector<double> d{1.0, 2.0}, o{0.0, 0.0};
    CHECK_THROWS_AS(lowest_eigenvalue_tridiagonal(d, o), InvalidArgument);
}

TEST_CASE("tridiagonal_hamiltonian against a dense solve") {
    std::vector<double> diag, off;
    tridiagonal_hamiltonian(quartic_potential(), {-8.0, 8.0, 300}, diag, off);
    CHECK(diag.size() == 298);
    CHECK(off.size() == 297);
    const double h = 16.0 / 299.0;
    CHECK(off[0] == doctest::Approx(-0.5 / (h * h)));
    CHECK(lowest_eigenvalue_tridiagonal(diag, off) == doctest::Approx(dense_lowest(diag, off)).epsilon(1e-12));
    CHECK_THROWS_AS(tridiagonal_hamiltonian([](std::span<const double> q) { return 1.0 / q[0]; },
                                            {-1.0, 1.0, 101}, diag, off),
                    InvalidArgument);
}

TEST_CASE("1D oracle: harmonic oscillator") {
    const auto e = solve_1d_ground_state(harmonic, {-10.0, 10.0, 2000});
    CHECK(std::abs(e.value - 0.5) <= 1e-6);
    CHECK(e.error_bar <= 1e-5);
    CHECK(e.retries == 0);
    CHECK(e.edge_ratio < 1e-8);
    CHECK(e.fine_n == 3999);
    // Sturm check on the fine matrix: nothing below the grid eigenvalue.
    std::vector<double> diag, off;
    tridiagonal_hamiltonian(harmonic, {-10.0, 10.0, e.fine_n}, diag, off);
    CHECK(sturm_count(diag, off, e.fine - 1e-9) == 0);
    CHECK(sturm_count(diag, off, e.fine + 1e-9) == 1);
}

TEST_CASE("1D oracle: quartic double well") {
    const auto e = solve_1d_ground_state(quartic_potential(), {-8.0, 8.0, 2000});
    CHECK(std::abs(e.value - (-2.66)) <= 0.01);
    CHECK(e.error_bar <= 1e-4);
    std::vector<double> diag, off;
    tridiagonal_hamiltonian(quartic_potential(), {-8.0, 8.0, e.fine_n}, diag, off);
    CHECK(sturm_count(diag, off, e.fine - 1e-9) == 0);
}

TEST_CASE("1D oracle: radial hydrogen with a wall at the origin") {
    Oracle1DOptions opt;
    opt.left_wall = true;
    const auto e = solve_1d_ground_state([](std::span<const double> r) { return -1.0 / r[0]; }, {0.0, 40.0, 4000}, opt);
    CHECK(std::abs(e.value + 0.5) <= 1e-4);
    CHECK(e.retries == 0);
    CHECK(e.x_range.lo == 0.0);
}

TEST_CASE("1D oracle: a small box is enlarged until the edges decay") {
    const auto e = solve_1d_ground_state(quartic_potential(), {-4.0, 4.0, 1000});
    CHECK(e.retries >= 1);
    CHECK(e.x_range.lo < -4.0);
    CHECK(e.x_range.hi > 4.0);
    CHECK(e.edge_ratio < 1e-8);
    CHECK(std::abs(e.value - (-2.66)) <= 0.01);

    Oracle1DOptions strict;
    strict.max_retries = 0;
    CHECK_THROWS_AS(solve_1d_ground_state(quartic_potential(), {-4.0, 4.0, 1000}, strict), NumericalFailure);
    strict.enlarge = 1.0;
    CHECK_THROWS_AS(solve_1d_ground_state(harmonic, {-10.0, 10.0, 1000}, strict), InvalidArgument);
}

TEST_CASE("property: halving h stays within the 1D error bar") {
    for (const auto &V : {ScalarField(harmonic), quartic_potential()}) {
        const auto a = solve_1d_ground_state(V, {-8.0, 8.0, 500});
        const auto b = solve_1d_ground_state(V, {-8.0, 8.0, 999});
        CHECK(std::abs(b.value - a.value) < a.error_bar);
    }
}

TEST_CASE("mask construction and connectivity") {
    const AnnularBilliard ab(0.75, 0.1);
    const MaskedGrid m = build_mask(ab.domain(), {{-0.9, 1.1}, {-1.0, 1.0}, 400});
    CHECK(mask_connected(m));
    CHECK(m.unknowns > 0);
    std::size_t inside = 0;
    for (auto k : m.index) {
        inside += k >= 0 ? 1 : 0;
    }
    CHECK(inside == m.unknowns);

    const MaskedGrid split = build_mask(two_disks(), {{-1.0, 1.0}, {-1.0, 1.0}, 100});
    CHECK_FALSE(mask_connected(split));
    CHECK_THROWS_AS(solve_2d_dirichlet_ground_state(two_disks(), {{-1.0, 1.0}, {-1.0, 1.0}, 100}), InvalidArgument);

    Domain open;
    open.dimension = 2;
    CHECK_THROWS_AS(build_mask(open, {{-1.0, 1.0}, {-1.0, 1.0}, 50}), InvalidArgument);
    Domain line;
    line.dimension = 1;
    line.constraint = [](std::span<const double> q) { return q[0] * q[0] - 1.0; };
    CHECK_THROWS_AS(build_mask(line, {{-1.0, 1.0}, {-1.0, 1.0}, 50}), InvalidArgument);
}

TEST_CASE("2D oracle: unit disk against the Bessel zero") {
    const double exact = 0.5 * std::pow(gbtest::bessel_j0_first_zero(), 2);
    const auto e = solve_2d_dirichlet_ground_state(unit_disk(), {{-1.0, 1.0}, {-1.0, 1.0}, 200});
    CHECK(std::abs(e.value - exact) <= 0.01);
    CHECK(std::abs(e.value - exact) <= e.error_bar);
    CHECK(e.fine_n == 400);
}

TEST_CASE("2D oracle: grid eigenvalue against a dense solve") {
    const MaskedGrid m = build_mask(unit_disk(), {{-1.0, 1.0}, {-1.0, 1.0}, 24});
    const auto n = static_cast<Eigen::Index>(m.unknowns);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    const std::size_t nx = m.grid.nx(), ny = m.grid.ny();
    const double h2 = m.grid.spacing() * m.grid.spacing();
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const auto k = m.index[j * nx + i];
            if (k < 0) {
                continue;
            }
            a(k, k) = 2.0 / h2;
            const std::pair<long, long> nb[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
            for (auto [di, dj] : nb) {
                const long ii = static_cast<long>(i) + di, jj = static_cast<long>(j) + dj;
                if (ii < 0 || jj < 0 || ii >= static_cast<long>(nx) || jj >= static_cast<long>(ny)) {
                    continue;
                }
                const auto kk = m.index[static_cast<std::size_t>(jj) * nx + static_cast<std::size_t>(ii)];
                if (kk >= 0) {
                    a(k, kk) = -0.5 / h2;
                }
            }
        }
    }
    const double dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues()(0);
    CHECK(dirichlet_grid_eigenvalue(m, {}, nullptr, nullptr) == doctest::Approx(dense).epsilon(1e-7));
}

TEST_CASE("2D oracle: eccentric annulus") {
    const AnnularBilliard ab(0.75, 0.1);
    const auto t0 = std::chrono::steady_clock::now();
    const auto e = solve_2d_dirichlet_ground_state(ab.domain(), {{-0.9, 1.1}, {-1.0, 1.0}, 400});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(std::abs(e.value - 42.94) <= 0.5);
    CHECK(e.coarse < e.fine);
    CHECK(secs < 60.0);
}

TEST_CASE("2D oracle: concentric annulus against the radial equation") {
    // psi = u / sqrt(rho): -u''/2 - u / (8 rho^2) = E u, u(3/4) = u(1) = 0.
    Oracle1DOptions walls;
    walls.left_wall = walls.right_wall = true;
    const auto radial =
        solve_1d_ground_state([](std::span<const double> r) { return -1.0 / (8.0 * r[0] * r[0]); }, {0.75, 1.0, 2000},
                              walls);
    CHECK(radial.error_bar < 1e-5);
    const auto e = solve_2d_dirichlet_ground_state(AnnularBilliard(0.75, 0.0).domain(), {{-1.0, 1.0}, {-1.0, 1.0}, 400});
    CHECK(std::abs(e.value - radial.value) <= e.error_bar + 1e-3);
    CHECK(std::abs(e.value - radial.value) / radial.value <= 0.01);
}

TEST_CASE("2D oracle: an exhausted inner budget is reported") {
    Oracle2DOptions tight;
    tight.max_inner = 2;
    CHECK_THROWS_AS(solve_2d_dirichlet_ground_state(unit_disk(), {{-1.0, 1.0}, {-1.0, 1.0}, 100}, tight),
                    NumericalFailure);
    Oracle2DOptions few;
    few.max_outer = 1;
    CHECK_THROWS_AS(solve_2d_dirichlet_ground_state(unit_disk(), {{-1.0, 1.0}, {-1.0, 1.0}, 100}, few),
                    NumericalFailure);
}

TEST_CASE("property: halving h stays within the 2D error bar") {
    const auto a = solve_2d_dirichlet_ground_state(unit_disk(), {{-1.0, 1.0}, {-1.0, 1.0}, 100});
    const auto b = solve_2d_dirichlet_ground_state(unit_disk(), {{-1.0, 1.0}, {-1.0, 1.0}, 200});
    CHECK(std::abs(b.value - a.value) < a.error_bar);
}
