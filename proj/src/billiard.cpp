#include "groundbound/billiard.hpp"

#include <algorithm>
#include <cmath>

namespace groundbound {

AnnularBilliard::AnnularBilliard(double inner_radius, double offset) : r_(inner_radius), delta_(offset) {
    if (!(r_ > 0.0 && r_ < 1.0)) {
        throw InvalidArgument("annular billiard: inner radius must lie in (0, 1)");
    }
    if (!(delta_ >= 0.0 && delta_ + r_ < 1.0)) {
        throw InvalidArgument("annular billiard: need 0 <= delta < 1 - r");
    }
}

MultivariatePolynomial AnnularBilliard::boundary() const {
    const auto x = MultivariatePolynomial::variable(2, 0);
    const auto y = MultivariatePolynomial::variable(2, 1);
    const auto one = MultivariatePolynomial::constant(2, 1.0);
    const auto inner = x * x + y * y - one * (r_ * r_);
    const auto xs = x - one * delta_;
    const auto outer = xs * xs + y * y - one;
    return inner * outer;
}

double AnnularBilliard::local_energy(double x, double y) const {
    const double inner = x * x + y * y - r_ * r_;
    const double outer = (x - delta_) * (x - delta_) + y * y - 1.0;
    const double xc = x - 0.5 * delta_;
    const double num = xc * xc + y * y - 0.25 * (1.0 + r_ * r_);
    return -8.0 * num / (inner * outer);
}

Domain AnnularBilliard::domain() const {
    const double r = r_, delta = delta_;
    Domain d;
    d.dimension = 2;
    d.constraint = [r, delta](std::span<const double> q) {
        return (q[0] * q[0] + q[1] * q[1] - r * r) * ((q[0] - delta) * (q[0] - delta) + q[1] * q[1] - 1.0);
    };

    // The numerator 8[(x-delta/2)^2+y^2-(1+r^2)/4] on each circle ranges over
    // an interval linear in cos(theta); its sign there fixes the limit of
    // E_loc = 8 N / |b| as b -> 0-.
    const double k = 0.25 * (1.0 + r * r);
    const double inner_lo = r * r - delta * r + 0.25 * delta * delta - k;
    const double inner_hi = r * r + delta * r + 0.25 * delta * delta - k;
    const double outer_lo = 1.0 - delta + 0.25 * delta * delta - k;
    const double outer_hi = 1.0 + delta + 0.25 * delta * delta - k;
    const double n_lo = std::min(inner_lo, outer_lo), n_hi = std::max(inner_hi, outer_hi);

    d.singular_sets.push_back(SingularSet{
        "boundary",
        [r, delta](std::span<const double> q) {
            const double di = std::abs(std::hypot(q[0], q[1]) - r);
            const double doo = std::abs(std::hypot(q[0] - delta, q[1]) - 1.0);
            return std::min(di, doo);
        },
        n_lo < 0.0 ? -kInf : kInf,
        n_hi > 0.0 ? kInf : -kInf,
        {}});
    return d;
}

std::vector<Interval> AnnularBilliard::box() const { return {{delta_ - 1.0, delta_ + 1.0}, {-1.0, 1.0}}; }

LocalEnergyField billiard_local_energy_field(const AnnularBilliard &ab) {
    const MultivariatePolynomial b = ab.boundary();
    const MultivariatePolynomial h_b = b.laplacian() * -0.5;
    RatioTrialFunction ratio{[b](std::span<const double> q) { return b(q); },
                             [h_b](std::span<const double> q) { return h_b(q); }};
    return LocalEnergyField(ab.domain(),
                            {{"closed-form", [ab](std::span<const double> q) { return ab.local_energy(q[0], q[1]); }},
                             LocalEnergyField::ratio_form(std::move(ratio))},
                            {}, ab.box());
}

MultivariatePolynomial unit_disk_boundary() {
    const auto x = MultivariatePolynomial::variable(2, 0);
    const auto y = MultivariatePolynomial::variable(2, 1);
    return x * x + y * y - MultivariatePolynomial::constant(2, 1.0);
}

LocalEnergyField plain_polynomial_billiard_field(const MultivariatePolynomial &b, std::vector<Interval> box,
                                                 double boundary_inf, double boundary_sup) {
    const std::size_t dim = b.dimension();
    const MultivariatePolynomial h_b = b.laplacian() * -0.5;
    std::vector<MultivariatePolynomial> grad;
    for (std::size_t i = 0; i < dim; ++i) {
        grad.push_back(b.derivative(i));
    }
    Domain d;
    d.dimension = dim;
    d.constraint = [b](std::span<const double> q) { return b(q); };
    d.singular_sets.push_back(SingularSet{"boundary",
                                          [b, grad](std::span<const double> q) {
                                              double g2 = 0.0;
                                              for (const auto &g : grad) {
                                                  g2 += g(q) * g(q);
                                              }
                                              return g2 > 0.0 ? std::abs(b(q)) / std::sqrt(g2) : kInf;
                                          },
                                          boundary_inf, boundary_sup, {}});
    RatioTrialFunction ratio{[b](std::span<const double> q) { return b(q); },
                             [h_b](std::span<const double> q) { return h_b(q); }};
    return LocalEnergyField(std::move(d), {LocalEnergyField::ratio_form(std::move(ratio))}, {}, std::move(box));
}

} // namespace groundbound
