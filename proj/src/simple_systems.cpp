#include "groundbound/simple_systems.hpp"

#include <cmath>

namespace groundbound {

TrialSystem harmonic_oscillator(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("harmonic trial needs lambda > 0");
    }
    TrialSystem sys;
    sys.hamiltonian.inverse_mass = InverseMassForm::scalar(1, 0.5);
    sys.hamiltonian.potential = [](std::span<const double> q) { return 0.5 * q[0] * q[0]; };
    sys.hamiltonian.domain.dimension = 1;
    sys.trial.params = {lambda};
    sys.trial.value = [lambda](std::span<const double> q) { return -0.5 * lambda * q[0] * q[0]; };
    sys.trial.gradient = [lambda](std::span<const double> q) { return std::vector<double>{-lambda * q[0]}; };
    sys.trial.laplacian = [lambda](std::span<const double>) { return -lambda; };
    sys.trial.hessian = [lambda](std::span<const double>) { return std::vector<double>{-lambda}; };
    const double k = 1.0 - lambda * lambda;
    const double limit = k > 0.0 ? kInf : (k < 0.0 ? -kInf : 0.5 * lambda);
    sys.asymptotics.control = AsymptoticControl::limits;
    sys.asymptotics.limits = {{"q -> -inf", limit, limit}, {"q -> +inf", limit, limit}};
    sys.box = {{-10.0, 10.0}};
    return sys;
}

TrialSystem radial_hydrogen(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("hydrogen trial needs lambda > 0");
    }
    TrialSystem sys;
    sys.hamiltonian.inverse_mass = InverseMassForm::scalar(1, 0.5);
    sys.hamiltonian.potential = [](std::span<const double> q) { return -1.0 / q[0]; };
    Domain &d = sys.hamiltonian.domain;
    d.dimension = 1;
    d.coordinates = CoordinateSystem::radial;
    d.coordinate_ranges = {{0.0, kInf}};
    SingularSet origin{"origin", [](std::span<const double> q) { return std::abs(q[0]); }, std::nullopt,
                       std::nullopt, {}};
    if (lambda == 1.0) {
        origin.continuation = [](std::span<const double>) { return -0.5; };
    } else {
        const double s = lambda > 1.0 ? kInf : -kInf;
        origin.inf_limit = s;
        origin.sup_limit = s;
    }
    d.singular_sets.push_back(std::move(origin));

    sys.trial.params = {lambda};
    sys.trial.value = [lambda](std::span<const double> q) { return -lambda * q[0]; };
    sys.trial.gradient = [lambda](std::span<const double>) { return std::vector<double>{-lambda}; };
    sys.trial.laplacian = [lambda](std::span<const double> q) { return -2.0 * lambda / q[0]; };
    const double limit = -0.5 * lambda * lambda;
    sys.asymptotics.control = AsymptoticControl::limits;
    sys.asymptotics.limits = {{"r -> inf", limit, limit}};
    sys.box = {{0.0, 40.0}};
    return sys;
}

TrialSystem hydrogen_cartesian() {
    auto norm = [](std::span<const double> q) { return std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]); };
    TrialSystem sys;
    sys.hamiltonian.inverse_mass = InverseMassForm::scalar(3, 0.5);
    sys.hamiltonian.potential = [norm](std::span<const double> q) { return -1.0 / norm(q); };
    sys.hamiltonian.domain.dimension = 3;
    sys.hamiltonian.domain.singular_sets.push_back(
        {"origin", norm, std::nullopt, std::nullopt, [](std::span<const double>) { return -0.5; }});
    sys.trial.value = [norm](std::span<const double> q) { return -norm(q); };
    sys.trial.gradient = [norm](std::span<const double> q) {
        const double r = norm(q);
        return std::vector<double>{-q[0] / r, -q[1] / r, -q[2] / r};
    };
    sys.trial.laplacian = [norm](std::span<const double> q) { return -2.0 / norm(q); };
    sys.trial.hessian = [norm](std::span<const double> q) {
        const double r = norm(q);
        std::vector<double> h(9);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                h[i * 3 + j] = -((i == j ? 1.0 : 0.0) - q[i] * q[j] / (r * r)) / r;
            }
        }
        return h;
    };
    sys.asymptotics.control = AsymptoticControl::limits;
    sys.asymptotics.limits = {{"r -> inf", -0.5, -0.5}};
    sys.box = std::vector<Interval>(3, Interval{-10.0, 10.0});
    return sys;
}

TrialFamily hydrogen_family() {
    return {"hydrogen S=-lambda r",
            {{0.5, 2.0}},
            [](std::span<const double> lambda) { return radial_hydrogen(lambda[0]).field(); }};
}

TrialFamily harmonic_family() {
    return {"harmonic S=-lambda q^2/2",
            {{0.5, 2.0}},
            [](std::span<const double> lambda) { return harmonic_oscillator(lambda[0]).field(); }};
}

} // namespace groundbound
