// Finite-difference consistency of a trial's analytic derivatives.
#pragma once

#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

namespace gbtest {

struct DerivativeErrors {
    double gradient = 0.0;
    double laplacian = 0.0;
};

//! Worst relative errors of grad S and of the metric Laplacian against
//! central differences of S and of grad S, over n random points of `box`.
inline DerivativeErrors trial_derivative_errors(const groundbound::LogTrialFunction &t,
                                                groundbound::CoordinateSystem coords,
                                                const std::vector<groundbound::Interval> &box, std::size_t n,
                                                unsigned long long seed, double step = 1e-3) {
    Gen gen(seed);
    DerivativeErrors worst;
    Fn S = [&](const std::vector<double> &q) { return t.value(q); };
    for (std::size_t k = 0; k < n; ++k) {
        const auto q = gen.point(box);
        double scale = 1.0;
        for (double x : q) {
            scale = std::max(scale, std::abs(x));
        }
        const double h = step * scale;
        const auto g = t.gradient(q);
        const auto g_fd = fd_gradient(S, q, h);
        double diff = 0.0, mag = 1.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            diff = std::max(diff, std::abs(g[i] - g_fd[i]));
            mag = std::max(mag, std::abs(g[i]));
        }
        worst.gradient = std::max(worst.gradient, diff / mag);

        // Divergence of the analytic gradient in the trial's metric.
        double div = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            Fn gi = [&, i](const std::vector<double> &p) { return t.gradient(p)[i]; };
            div += fd_partial(gi, q, i, h);
        }
        if (coords == groundbound::CoordinateSystem::cylindrical) {
            div += g[0] / q[0];
        } else if (coords == groundbound::CoordinateSystem::radial) {
            div += 2.0 * g[0] / q[0];
        }
        const double lap = t.laplacian(q);
        worst.laplacian = std::max(worst.laplacian, std::abs(lap - div) / std::max(1.0, std::abs(lap)));
    }
    return worst;
}

inline void check_trial_derivatives(const groundbound::LogTrialFunction &t, groundbound::CoordinateSystem coords,
                                    const std::vector<groundbound::Interval> &box, unsigned long long seed,
                                    double step = 1e-3) {
    const auto e = trial_derivative_errors(t, coords, box, 200, seed, step);
    CHECK(e.gradient <= 1e-6);
    CHECK(e.laplacian <= 1e-5);
}

} // namespace gbtest
