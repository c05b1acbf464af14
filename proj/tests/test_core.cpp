#include "groundbound/billiard.hpp"
#include "groundbound/core.hpp"
#include "groundbound/coulomb.hpp"
#include "groundbound/magnetic.hpp"
#include "groundbound/quartic.hpp"
#include "groundbound/simple_systems.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/trial_checks.hpp"

#include <doctest.h>

#include <cmath>

using namespace groundbound;

namespace {

LocalEnergyField constant_field(double c, std::size_t dim) {
    Domain d;
    d.dimension = dim;
    Asymptotics a;
    a.control = AsymptoticControl::limits;
    a.limits.push_back({"any", c, c});
    return LocalEnergyField(d,
                            {{"first", [c](std::span<const double>) { return c; }},
                             {"second", [c](std::span<const double>) { return c; }}},
                            a, std::vector<Interval>(dim, Interval{-1.0, 1.0}));
}

} // namespace

TEST_CASE("InverseMassForm validates symmetry and positive definiteness") {
    CHECK_NOTHROW(InverseMassForm(2, {1.0, 0.2, 0.2, 1.0}));
    CHECK_THROWS_AS(InverseMassForm(2, {1.0, 0.2, 0.3, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(InverseMassForm(2, {1.0, 2.0, 2.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(InverseMassForm(2, {1.0, 0.0, 0.0}), InvalidArgument);
    CHECK(InverseMassForm::scalar(3, 0.5).is_scalar());
    CHECK_FALSE(InverseMassForm(2, {1.0, 0.1, 0.1, 1.0}).is_scalar());
}

TEST_CASE("Domain interior is strict and respects coordinate ranges") {
    Domain d;
    d.dimension = 2;
    d.constraint = [](std::span<const double> q) { return q[0] * q[0] + q[1] * q[1] - 1.0; };
    const double inside[2] = {0.5, 0.0}, on[2] = {1.0, 0.0}, outside[2] = {1.5, 0.0};
    CHECK(d.interior(inside));
    CHECK_FALSE(d.interior(on));
    CHECK_FALSE(d.interior(outside));
    CHECK(d.bounded());

    Domain half;
    half.dimension = 1;
    half.coordinate_ranges = {{0.0, kInf}};
    const double neg[1] = {-0.1};
    CHECK_FALSE(half.interior(neg));
    CHECK_FALSE(half.bounded());

    Domain bad;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad.dimension = 2;
    bad.coordinate_ranges = {{0.0, 1.0}};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("Hamiltonian validation rejects inconsistent parts") {
    Hamiltonian h;
    h.inverse_mass = InverseMassForm::scalar(2, 0.5);
    h.domain.dimension = 3;
    h.potential = [](std::span<const double>) { return 0.0; };
    CHECK_THROWS_AS(h.validate(), InvalidArgument);
    h.domain.dimension = 2;
    CHECK_NOTHROW(h.validate());
    h.potential = nullptr;
    CHECK_THROWS_AS(h.validate(), InvalidArgument);

    Hamiltonian cyl;
    cyl.inverse_mass = InverseMassForm(2, {1.0, 0.1, 0.1, 1.0});
    cyl.potential = [](std::span<const double>) { return 0.0; };
    cyl.domain.dimension = 2;
    cyl.domain.coordinates = CoordinateSystem::cylindrical;
    CHECK_THROWS_AS(cyl.validate(), InvalidArgument);
}

TEST_CASE("local_energy_log: hydrogen S=-r is flat at -1/2") {
    const TrialSystem h = hydrogen_cartesian();
    gbtest::Gen gen(11);
    for (int i = 0; i < 50; ++i) {
        const auto q = gen.vector(3, -5.0, 5.0);
        CHECK(local_energy_log(h.hamiltonian, h.trial, q) == doctest::Approx(-0.5).epsilon(1e-13));
    }
}

TEST_CASE("local_energy_log: harmonic ground state at q=1.3") {
    const TrialSystem h = harmonic_oscillator(1.0);
    const double q[1] = {1.3};
    CHECK(local_energy_log(h.hamiltonian, h.trial, q) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("local_energy_log: quartic S0 at the origin") {
    const QuarticOscillator qo(1.0 / std::sqrt(2.0), -1, 8.0);
    const TrialSystem sys = quartic_system(qo);
    const double q0[1] = {0.0};
    const double e = local_energy_log(sys.hamiltonian, sys.trial, q0);
    // Independent: finite differences of S0 alone.
    gbtest::Fn V = [&](const std::vector<double> &q) { return qo.potential(q[0]); };
    gbtest::Fn S = [&](const std::vector<double> &q) { return qo.s0(q[0]); };
    const double fd = gbtest::fd_local_energy(V, S, {{0.5}}, {0.0}, 1e-3);
    CHECK(e == doctest::Approx(fd).epsilon(1e-8));
    // Hand evaluation: E(0) = -S_u(u = delta^2) = -(r/sqrt(2) - 1/16) = -7/16.
    CHECK(e == doctest::Approx(-7.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("local_energy_log uses the full inverse-mass form when it is not scalar") {
    // Two coordinates with a = [[1, 0.3], [0.3, 2]] and S = -(x^2 + x y + y^2)/2.
    Hamiltonian h;
    h.inverse_mass = InverseMassForm(2, {1.0, 0.3, 0.3, 2.0});
    h.potential = [](std::span<const double> q) { return q[0] * q[1]; };
    h.domain.dimension = 2;
    LogTrialFunction t;
    t.value = [](std::span<const double> q) { return -0.5 * (q[0] * q[0] + q[0] * q[1] + q[1] * q[1]); };
    t.gradient = [](std::span<const double> q) {
        return std::vector<double>{-q[0] - 0.5 * q[1], -q[1] - 0.5 * q[0]};
    };
    t.laplacian = [](std::span<const double>) { return -2.0; };
    const double q[2] = {0.7, -0.4};
    CHECK_THROWS_AS(local_energy_log(h, t, q), InvalidArgument);
    t.hessian = [](std::span<const double>) { return std::vector<double>{-1.0, -0.5, -0.5, -1.0}; };
    gbtest::Fn V = [](const std::vector<double> &p) { return p[0] * p[1]; };
    gbtest::Fn S = [&](const std::vector<double> &p) { return t.value(p); };
    const double fd = gbtest::fd_local_energy(V, S, {{1.0, 0.3}, {0.3, 2.0}}, {0.7, -0.4}, 1e-3);
    CHECK(local_energy_log(h, t, q) == doctest::Approx(fd).epsilon(1e-9));
}

TEST_CASE("local_energy_log signals non-finite arithmetic") {
    const TrialSystem h = hydrogen_cartesian();
    const double origin[3] = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(local_energy_log(h.hamiltonian, h.trial, origin), NumericalFailure);
}

TEST_CASE("local_energy_ratio: unit disk with f = 1") {
    const auto b = unit_disk_boundary();
    const auto hb = b.laplacian() * -0.5;
    RatioTrialFunction t{[b](std::span<const double> q) { return b(q); },
                         [hb](std::span<const double> q) { return hb(q); }};
    const double o[2] = {0.0, 0.0}, half[2] = {0.5, 0.0}, edge[2] = {1.0, 0.0};
    CHECK(local_energy_ratio(t, o) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(local_energy_ratio(t, half) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(local_energy_ratio(t, edge), SingularEvaluation);
}

TEST_CASE("local_energy_ratio: annular billiard phi = b at the minimizer") {
    const AnnularBilliard ab(0.75, 0.1);
    const auto b = ab.boundary();
    const auto hb = b.laplacian() * -0.5;
    RatioTrialFunction t{[b](std::span<const double> q) { return b(q); },
                         [hb](std::span<const double> q) { return hb(q); }};
    const double q[2] = {0.8602, 0.0};
    CHECK(local_energy_ratio(t, q) == doctest::Approx(28.390).epsilon(1e-4));
}

TEST_CASE("LocalEnergyField construction contracts") {
    Domain open;
    open.dimension = 1;
    const LocalEnergyField::Representation rep{"c", [](std::span<const double>) { return 1.0; }};
    CHECK_THROWS_AS(LocalEnergyField(open, {rep}, {}, {{-1.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(LocalEnergyField(open, {}, {AsymptoticControl::limits, {}}, {{-1.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(LocalEnergyField(open, {rep}, {AsymptoticControl::limits, {}}, {{-1.0, 1.0}, {0.0, 1.0}}),
                    InvalidArgument);
    CHECK_NOTHROW(LocalEnergyField(open, {rep}, {AsymptoticControl::limits, {}}, {{-1.0, 1.0}}));
}

TEST_CASE("LocalEnergyField returns declared continuations inside singular tubes") {
    const TrialSystem h = hydrogen_cartesian();
    const LocalEnergyField f = h.field();
    const double origin[3] = {0.0, 0.0, 0.0}, near[3] = {1e-8, 0.0, 0.0};
    CHECK(f(origin) == -0.5);
    CHECK(f(near) == -0.5);
    CHECK(f.admissible(origin));

    const TrialSystem r = radial_hydrogen(1.5);
    const LocalEnergyField g = r.field();
    const double zero[1] = {0.0};
    CHECK_THROWS_AS(g(zero), SingularEvaluation);
    CHECK_FALSE(g.admissible(zero));
}

TEST_CASE("cross_check_field: Coulomb closed form against log form, N = 3") {
    const auto f = coulomb_local_energy_field(helium_like(2.0));
    const auto rep = cross_check_field(f, 100, 5);
    CHECK(rep.samples == 100);
    CHECK(rep.passed);
    CHECK(rep.max_discrepancy <= 1e-8);
}

TEST_CASE("cross_check_field: billiard closed form against the ratio form") {
    const auto f = billiard_local_energy_field(AnnularBilliard(0.75, 0.1));
    const auto rep = cross_check_field(f, 100, 6);
    CHECK(rep.samples == 100);
    CHECK(rep.max_discrepancy <= 1e-8);
}

TEST_CASE("cross_check_field: a field against itself") {
    const auto f = billiard_local_energy_field(AnnularBilliard(0.75, 0.1));
    const auto rep = cross_check_field(f, 50, 7, 0, 0);
    CHECK(rep.max_discrepancy == 0.0);
    CHECK(rep.passed);
}

TEST_CASE("cross_check_field: nothing admissible to sample") {
    Domain d;
    d.dimension = 1;
    d.singular_sets.push_back({"everything", [](std::span<const double>) { return 0.0; }, std::nullopt,
                               std::nullopt, [](std::span<const double>) { return 0.0; }});
    const LocalEnergyField f(d,
                             {{"a", [](std::span<const double>) { return 0.0; }},
                              {"b", [](std::span<const double>) { return 0.0; }}},
                             {AsymptoticControl::limits, {}}, {{-1.0, 1.0}});
    CHECK_THROWS_AS(cross_check_field(f, 10, 1), SingularEvaluation);
    CHECK_THROWS_AS(cross_check_field(constant_field(1.0, 1), 10, 1, 0, 2), std::out_of_range);
}

TEST_CASE("property: flat local energies of exact ground states") {
    gbtest::Gen gen(1234);
    const TrialSystem h = hydrogen_cartesian();
    const CoulombSystem pair(3, {{1.0, 1.0}, {1.0, -1.0}}, true);
    const auto pair_field = coulomb_local_energy_field(pair);
    std::vector<double> hyd, two;
    for (int i = 0; i < 1000; ++i) {
        const auto q = gen.vector(3, -4.0, 4.0);
        hyd.push_back(local_energy_log(h.hamiltonian, h.trial, q));
        two.push_back(pair_field.evaluate(1, q));
    }
    for (const auto *v : {&hyd, &two}) {
        double mean = 0.0, var = 0.0;
        for (double x : *v) {
            mean += x;
        }
        mean /= static_cast<double>(v->size());
        for (double x : *v) {
            var += (x - mean) * (x - mean);
        }
        var /= static_cast<double>(v->size() - 1);
        CHECK(var / (mean * mean) < 1e-16);
        CHECK(mean == doctest::Approx(-0.5).epsilon(1e-12));
    }
}

TEST_CASE("property: analytic derivatives of every shipped trial") {
    SUBCASE("hydrogen, Cartesian") {
        gbtest::check_trial_derivatives(hydrogen_cartesian().trial, CoordinateSystem::cartesian,
                                        std::vector<Interval>(3, Interval{0.3, 5.0}), 21);
    }
    SUBCASE("hydrogen, radial") {
        for (double lambda : {0.7, 1.0, 1.6}) {
            gbtest::check_trial_derivatives(radial_hydrogen(lambda).trial, CoordinateSystem::radial, {{0.2, 30.0}},
                                            22);
        }
    }
    SUBCASE("harmonic") {
        gbtest::check_trial_derivatives(harmonic_oscillator(1.3).trial, CoordinateSystem::cartesian, {{-8.0, 8.0}},
                                        23);
    }
    SUBCASE("quartic S0") {
        for (int eta : {-1, 1}) {
            const QuarticOscillator qo(1.0 / std::sqrt(2.0), eta, 8.0);
            gbtest::check_trial_derivatives(quartic_system(qo).trial, CoordinateSystem::cartesian,
                                            {{-40.0, 40.0}}, 24);
        }
    }
    SUBCASE("magnetic hydrogen") {
        for (double B : {0.5, 1.0, 4.0}) {
            const MagneticHydrogen mh(B);
            for (auto v : {MagneticVariant::lower, MagneticVariant::upper, MagneticVariant::improved}) {
                gbtest::check_trial_derivatives(mh.trial(v), CoordinateSystem::cylindrical, {{0.05, 10.0}, {0.05, 10.0}},
                                                25);
            }
        }
    }
    SUBCASE("Coulomb pair-cusp trials") {
        gbtest::Gen gen(26);
        for (int k = 0; k < 5; ++k) {
            const CoulombSystem cs = gen.coulomb_system(4);
            const auto t = cs.trial();
            // Random configurations keep every pair at least 0.2 apart.
            gbtest::Gen pts(100 + k);
            double gerr = 0.0, herr = 0.0;
            for (int i = 0; i < 40; ++i) {
                const auto q = pts.configuration(cs, 0.2);
                gbtest::Fn S = [&](const std::vector<double> &p) { return t.value(p); };
                const auto g = t.gradient(q);
                const auto gfd = gbtest::fd_gradient(S, q, 1e-3);
                const auto hess = t.hessian(q);
                double trace = 0.0;
                const std::size_t m = q.size();
                for (std::size_t a = 0; a < m; ++a) {
                    gerr = std::max(gerr, std::abs(g[a] - gfd[a]) / std::max(1.0, std::abs(g[a])));
                    trace += hess[a * m + a];
                    gbtest::Fn ga = [&, a](const std::vector<double> &p) { return t.gradient(p)[a]; };
                    for (std::size_t b = 0; b < m; ++b) {
                        const double fd = gbtest::fd_partial(ga, q, b, 1e-3);
                        herr = std::max(herr, std::abs(hess[a * m + b] - fd) / std::max(1.0, std::abs(fd)));
                    }
                }
                CHECK(t.laplacian(q) == doctest::Approx(trace).epsilon(1e-12));
            }
            CHECK(gerr <= 1e-6);
            CHECK(herr <= 1e-5);
        }
    }
}

TEST_CASE("TrialSystem::field wraps the log form") {
    const TrialSystem h = harmonic_oscillator(1.0);
    const LocalEnergyField f = h.field();
    CHECK(f.representations().size() == 1);
    CHECK(f.representations()[0].name == "log-form");
    const double q[1] = {2.0};
    CHECK(f(q) == doctest::Approx(0.5));
    CHECK(f.default_box().size() == 1);
}
