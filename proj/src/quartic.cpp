#include "groundbound/quartic.hpp"

#include <algorithm>
#include <cmath>

namespace groundbound {

QuarticOscillator::QuarticOscillator(double r, int eta, double delta2) : r_(r), eta_(eta), d2_(delta2) {
    if (!(r_ > 0.0) || !std::isfinite(r_)) {
        throw InvalidArgument("quartic: r must be finite and positive");
    }
    if (eta_ != 1 && eta_ != -1) {
        throw InvalidArgument("quartic: eta must be +1 or -1");
    }
    if (!(d2_ > 0.0) || !std::isfinite(d2_)) {
        throw InvalidArgument("quartic: delta^2 must be finite and positive");
    }
}

double QuarticOscillator::potential(double q) const { return 0.5 * r_ * r_ * q * q * (q * q + eta_ * d2_); }

double QuarticOscillator::potential_minimum() const { return eta_ < 0 ? -r_ * r_ * d2_ * d2_ / 8.0 : 0.0; }

double QuarticOscillator::s0(double q) const {
    const double u = q * q + d2_, su = std::sqrt(u);
    return -r_ * u * su / 3.0 + 0.5 * r_ * d2_ * (1 - eta_) * su - 0.5 * std::log(u) - 0.5 * r_ * d2_ * d2_ / su;
}

namespace {

struct UDerivs {
    double s_u, s_uu;
};

UDerivs u_derivatives(double r, int eta, double d2, double q) {
    const double u = q * q + d2, su = std::sqrt(u);
    const double k = r * d2 * (1 - eta);
    const double s_u = -0.5 * r * su + 0.25 * k / su - 0.5 / u + 0.25 * r * d2 * d2 / (u * su);
    const double s_uu = -0.25 * r / su - 0.125 * k / (u * su) + 0.5 / (u * u) - 0.375 * r * d2 * d2 / (u * u * su);
    return {s_u, s_uu};
}

} // namespace

double QuarticOscillator::s0_prime(double q) const { return 2.0 * q * u_derivatives(r_, eta_, d2_, q).s_u; }

double QuarticOscillator::s0_second(double q) const {
    const auto d = u_derivatives(r_, eta_, d2_, q);
    return 2.0 * d.s_u + 4.0 * q * q * d.s_uu;
}

// For large |q|, S0' = -r q^2 - r eta delta^2 / 2 - 1/q + O(q^-2) makes
// V - (S0'' + S0'^2)/2 lose every growing power; the constant left over is
// r^2 delta^4 (1 + eta)^2 / 8, and the leading correction is 3 delta^2 r / (2|q|)
// for eta = -1.
double QuarticOscillator::asymptotic_local_energy() const {
    const double e = 1.0 + eta_;
    return r_ * r_ * d2_ * d2_ * e * e / 8.0;
}

double QuarticOscillator::box_half_width() const {
    const double q_peak = (d2_ * d2_ * d2_ * r_ * r_ + 2.0) / (1.5 * d2_ * r_);
    return std::max(12.0, 3.0 * q_peak);
}

double QuarticOscillator::normalizability_radius() const {
    // S0 + |q| is eventually decreasing; scan outward for the last point above 0.
    const double step = 1e-3;
    double last = 0.0;
    for (double q = 0.0; q < 1e6; q += step) {
        if (s0(q) > -q) {
            last = q + step;
        } else if (q > 2.0 * last + 10.0 && s0(q) < -2.0 * q) {
            break;
        }
    }
    return last;
}

TrialSystem quartic_system(const QuarticOscillator &qo) {
    TrialSystem sys;
    sys.hamiltonian.inverse_mass = InverseMassForm::scalar(1, 0.5);
    sys.hamiltonian.potential = [qo](std::span<const double> q) { return qo.potential(q[0]); };
    sys.hamiltonian.domain.dimension = 1;

    sys.trial.params = {qo.r(), static_cast<double>(qo.eta()), qo.delta2()};
    sys.trial.value = [qo](std::span<const double> q) { return qo.s0(q[0]); };
    sys.trial.gradient = [qo](std::span<const double> q) { return std::vector<double>{qo.s0_prime(q[0])}; };
    sys.trial.laplacian = [qo](std::span<const double> q) { return qo.s0_second(q[0]); };
    sys.trial.hessian = [qo](std::span<const double> q) { return std::vector<double>{qo.s0_second(q[0])}; };
    sys.trial.normalizable = true;
    sys.trial.normalizability_note = "S0(q) <= -|q| for |q| >= " + std::to_string(qo.normalizability_radius());

    const double L = qo.asymptotic_local_energy();
    sys.asymptotics.control = AsymptoticControl::limits;
    sys.asymptotics.limits = {{"q -> -inf", L, L}, {"q -> +inf", L, L}};
    const double w = qo.box_half_width();
    sys.box = {{-w, w}};
    return sys;
}

} // namespace groundbound
