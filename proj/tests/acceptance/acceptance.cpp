// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and printed with each result.

#include "cli.hpp"

#include "groundbound/billiard.hpp"
#include "groundbound/coulomb.hpp"
#include "groundbound/magnetic.hpp"
#include "groundbound/oracle.hpp"
#include "groundbound/quartic.hpp"
#include "groundbound/refine.hpp"
#include "groundbound/search.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace groundbound;

namespace {

// Billiard (criteria 1, 2).
constexpr double kBilliardLower = 28.390;
constexpr double kBilliardLowerTol = 0.01;
constexpr double kBilliardLocationTol = 0.01;
constexpr double kBilliardSeconds = 10.0;
constexpr double kAnnulusOracle = 42.94;
constexpr double kAnnulusOracleTol = 0.5;
constexpr double kAnnulusSeconds = 120.0;
// Helium (3).
constexpr double kHeliumSearchTol = 1e-3;
constexpr double kHeliumSeconds = 30.0;
// Coulomb equivalence (4) and flatness (5).
constexpr int kCoulombSystems = 50;
constexpr int kCoulombConfigurations = 100;
constexpr double kCoulombTol = 1e-8;
constexpr double kCoulombSeconds = 30.0;
constexpr int kFlatSamples = 1000;
constexpr double kFlatVariance = 1e-16;
constexpr double kFlatValueTol = 1e-14;
// Magnetic hydrogen (6, 8).
constexpr double kMagneticTol = 1e-6;
constexpr double kMagneticSeconds = 60.0;
constexpr double kCuspTol = 1e-10;
// Quartic (7, 9).
constexpr double kQuarticBase = -3.27;
constexpr double kQuarticBaseTol = 0.01;
constexpr double kQuarticRefined = -2.80;
constexpr double kQuarticOracle = -2.66;
constexpr double kQuarticOracleTol = 0.01;
constexpr double kSandwichSlack = 1e-3;
constexpr double kQuarticSeconds = 120.0;
constexpr double kLocalityDistance = 10.0; // in units of sigma
constexpr double kLocalityAmplitude = 0.1;
constexpr double kLocalityTol = 1e-6;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char *name, const std::function<Outcome()> &body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), s);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

QuarticOscillator paper_quartic() { return QuarticOscillator(1.0 / std::sqrt(2.0), -1, 8.0); }

Outcome billiard_lower() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = global_min(billiard_local_energy_field(AnnularBilliard(0.75, 0.1)), SearchConfig{});
    const double secs = seconds_since(t0);
    const double dist = std::hypot(r.location[0] - 0.86, r.location[1]);
    const bool ok = std::abs(r.value - kBilliardLower) <= kBilliardLowerTol && dist <= kBilliardLocationTol &&
                    secs < kBilliardSeconds;
    return {ok, fmt("inf E_loc = %.6f (target %.3f +- %.2f) at (%.5f, %.5f), distance %.4f to (0.86, 0)", r.value,
                    kBilliardLower, kBilliardLowerTol, r.location[0], r.location[1], dist)};
}

Outcome billiard_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const AnnularBilliard ab(0.75, 0.1);
    const auto e = solve_2d_dirichlet_ground_state(ab.domain(), {{-0.9, 1.1}, {-1.0, 1.0}, 400});
    const double secs = seconds_since(t0);
    const double lower = global_min(billiard_local_energy_field(ab), SearchConfig{}).value;
    const bool ok = std::abs(e.value - kAnnulusOracle) <= kAnnulusOracleTol && lower <= e.value &&
                    secs < kAnnulusSeconds;
    return {ok, fmt("E0 = %.4f +- %.4f (grids %zu/%zu, target %.2f +- %.1f); lower %.4f <= E0", e.value, e.error_bar,
                    e.coarse_n, e.fine_n, kAnnulusOracle, kAnnulusOracleTol, lower)};
}

Outcome helium() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto a = helium_bounds(2.0);
    const auto f = coulomb_local_energy_field(helium_like(2.0));
    SearchConfig cfg;
    cfg.grid_points_per_axis = 9;
    cfg.refinement_levels = 2;
    cfg.multistart_count = 16;
    const auto lo = global_min(f, cfg), hi = global_max(f, cfg);
    const double secs = seconds_since(t0);
    const bool ok = a.lower == -4.25 && a.upper == -2.25 && std::abs(lo.value - a.lower) <= kHeliumSearchTol &&
                    std::abs(hi.value - a.upper) <= kHeliumSearchTol && secs < kHeliumSeconds;
    return {ok, fmt("analytic (%.17g, %.17g); search (%.6f, %.6f), tolerance %.0e", a.lower, a.upper, lo.value,
                    hi.value, kHeliumSearchTol)};
}

Outcome coulomb_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    gbtest::Gen gen(2024);
    double worst = 0.0;
    for (int s = 0; s < kCoulombSystems; ++s) {
        const CoulombSystem cs = gen.coulomb_system(5);
        const Hamiltonian h = cs.hamiltonian();
        const LogTrialFunction t = cs.trial();
        for (int k = 0; k < kCoulombConfigurations; ++k) {
            const auto q = gen.configuration(cs);
            const double closed = coulomb_local_energy(cs, ParticleConfiguration(cs.space_dimension(), q));
            worst = std::max(worst, gbtest::relative_difference(closed, local_energy_log(h, t, q)));
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= kCoulombTol && secs < kCoulombSeconds,
            fmt("%d systems x %d configurations, max relative difference %.3e (tolerance %.0e)", kCoulombSystems,
                kCoulombConfigurations, worst, kCoulombTol)};
}

Outcome two_body_flatness() {
    const CoulombSystem hyd(3, {{1.0, 1.0}, {1.0, -1.0}}, true);
    const double lambda = hyd.cusp(0, 1), expected = -lambda * lambda / (2.0 * hyd.reduced_mass(0, 1));
    const auto f = coulomb_local_energy_field(hyd);
    gbtest::Gen gen(5);
    double mean = 0.0, worst = 0.0;
    std::vector<double> v;
    for (int i = 0; i < kFlatSamples; ++i) {
        v.push_back(f(gen.configuration(hyd)));
        mean += v.back();
        worst = std::max(worst, std::abs(v.back() - expected) / std::abs(expected));
    }
    mean /= kFlatSamples;
    double var = 0.0;
    for (double x : v) {
        var += (x - mean) * (x - mean);
    }
    var /= kFlatSamples - 1;
    const double rel = var / (mean * mean);
    return {rel < kFlatVariance && worst <= kFlatValueTol,
            fmt("relative variance %.3e (< %.0e); mean %.17g vs -lambda^2/(2 m01) = %.17g, max deviation %.1e", rel,
                kFlatVariance, mean, expected, worst)};
}

Outcome magnetic() {
    const auto t0 = std::chrono::steady_clock::now();
    const SearchConfig cfg;
    double worst = 0.0;
    for (double B : {0.5, 1.0, 2.0}) {
        const MagneticHydrogen mh(B);
        const double lo = bounds(magnetic_hydrogen_field(mh, MagneticVariant::lower), cfg).lower;
        const double hi = bounds(magnetic_hydrogen_field(mh, MagneticVariant::upper), cfg).upper;
        worst = std::max({worst, std::abs(lo + 0.5), std::abs(hi - (-0.5 + B / 2))});
    }
    const double improved = bounds(magnetic_hydrogen_field(MagneticHydrogen(4.0), MagneticVariant::improved), cfg).lower;
    const double secs = seconds_since(t0);
    return {worst <= kMagneticTol && improved > -0.5 && secs < kMagneticSeconds,
            fmt("trivial bounds max error %.2e (tolerance %.0e); improved lower at B=4: %.6f > -0.5", worst,
                kMagneticTol, improved)};
}

Outcome quartic() {
    const auto t0 = std::chrono::steady_clock::now();
    const QuarticOscillator qo = paper_quartic();
    const auto base = bounds(quartic_system(qo).field(), SearchConfig{});
    const auto st = refine_schedule(quartic_system(qo), default_quartic_centers(), 1.0, refine_search_config(0));
    const auto e0 = solve_1d_ground_state([qo](std::span<const double> q) { return qo.potential(q[0]); },
                                          {-8.0, 8.0, 2000});
    const double secs = seconds_since(t0);
    bool monotone = true, sandwich = base.upper + kSandwichSlack >= e0.value;
    for (std::size_t i = 0; i < st.bound_history.size(); ++i) {
        sandwich = sandwich && st.bound_history[i].lower - kSandwichSlack <= e0.value;
        monotone = monotone && (i == 0 || st.bound_history[i].lower >= st.bound_history[i - 1].lower);
    }
    const bool ok = std::abs(base.lower - kQuarticBase) <= kQuarticBaseTol && st.current_lower >= kQuarticRefined &&
                    monotone && std::abs(e0.value - kQuarticOracle) <= kQuarticOracleTol && sandwich &&
                    secs < kQuarticSeconds;
    return {ok, fmt("base %.6f; refined %.6f after %zu centers (>= %.2f, %s); oracle %.6f; sandwich %s "
                    "(upper %.6f)",
                    base.lower, st.current_lower, st.bound_history.size() - 1, kQuarticRefined,
                    monotone ? "monotone" : "NOT monotone", e0.value, sandwich ? "holds" : "violated", base.upper)};
}

Outcome cusps() {
    double worst = 0.0;
    for (double B : {0.1, 0.5, 1.0, 2.0, 4.0, 10.0}) {
        const MagneticHydrogen mh(B);
        for (auto v : {MagneticVariant::lower, MagneticVariant::upper, MagneticVariant::improved}) {
            worst = std::max(worst, mh.cusp_residual(v));
        }
    }
    return {worst <= kCuspTol, fmt("max cusp residual %.2e over three variants and six fields (tolerance %.0e)",
                                   worst, kCuspTol)};
}

Outcome locality() {
    const auto cfg = refine_search_config(0);
    const RefinementState st = initial_state(quartic_system(paper_quartic()), true, cfg);
    const double sigma = 1.0;
    const double argmin = std::abs(st.argmin[0]);
    double worst = 0.0, worst_s = 0.0, worst_a = 0.0;
    for (double a : {argmin + kLocalityDistance * sigma, argmin + 1.5 * kLocalityDistance * sigma}) {
        for (double s : {-kLocalityAmplitude, -0.05, -0.01, 0.01, 0.05, kLocalityAmplitude}) {
            const double lower = global_min(perturbed_field(st, GaussianBump{s, a, sigma}), cfg).value;
            const double change = std::abs(lower - st.current_lower);
            if (change > worst) {
                worst = change;
                worst_s = s;
                worst_a = a;
            }
        }
    }
    return {worst < kLocalityTol,
            fmt("max |change| of the lower bound %.4g at a=%.3f, s=%+.2f (tolerance %.0e, |s| <= %.1f, %g sigma "
                "from the argmin)",
                worst, worst_a, worst_s, kLocalityTol, kLocalityAmplitude, kLocalityDistance)};
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> commands{
        {"bounds", "--system", "annular-billiard", "--seed", "7"},
        {"bounds", "--system", "helium", "--variant", "search", "--grid-n", "8", "--levels", "1", "--seed", "3"},
        {"bounds", "--system", "magnetic-hydrogen", "--variant", "improved", "--B", "4", "--seed", "9"},
        {"refine", "--system", "quartic", "--seed", "1"},
        {"sweep", "--system", "magnetic-hydrogen", "--param", "B", "--values", "0.5,1,2,4", "--format", "json"},
        {"field", "--system", "quartic", "--box=-6,6", "--grid-n", "1201"},
        {"oracle", "--system", "quartic"},
    };
    std::size_t identical = 0;
    for (const auto &c : commands) {
        std::ostringstream o1, o2, e1, e2;
        const int c1 = cli::run(c, o1, e1), c2 = cli::run(c, o2, e2);
        identical += (c1 == c2 && o1.str() == o2.str() && !o1.str().empty()) ? 1 : 0;
    }
    return {identical == commands.size(),
            fmt("%zu of %zu commands byte-identical on repetition", identical, commands.size())};
}

} // namespace

int main() {
    criterion(1, "annular billiard lower bound", billiard_lower);
    criterion(2, "annular billiard oracle", billiard_oracle);
    criterion(3, "helium analytic and searched bounds", helium);
    criterion(4, "Coulomb closed form vs log form", coulomb_equivalence);
    criterion(5, "two-body flatness", two_body_flatness);
    criterion(6, "magnetic hydrogen bounds", magnetic);
    criterion(7, "quartic baseline, refinement and oracle", quartic);
    criterion(8, "magnetic cusp conditions", cusps);
    criterion(9, "locality of far bumps", locality);
    criterion(10, "determinism", determinism);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
