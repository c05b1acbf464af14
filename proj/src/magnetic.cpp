#include "groundbound/magnetic.hpp"

#include <algorithm>
#include <cmath>

namespace groundbound {

std::string to_string(MagneticVariant v) {
    switch (v) {
    case MagneticVariant::lower:
        return "lower";
    case MagneticVariant::upper:
        return "upper";
    case MagneticVariant::improved:
        return "improved";
    }
    return "unknown";
}

MagneticVariant magnetic_variant_from_string(const std::string &name) {
    if (name == "lower") {
        return MagneticVariant::lower;
    }
    if (name == "upper") {
        return MagneticVariant::upper;
    }
    if (name == "improved") {
        return MagneticVariant::improved;
    }
    throw InvalidArgument("unknown magnetic-hydrogen variant '" + name + "'");
}

MagneticHydrogen::MagneticHydrogen(double B) : b_(B) {
    if (!(B >= 0.0) || !std::isfinite(B)) {
        throw InvalidArgument("magnetic field strength must be finite and >= 0");
    }
}

namespace {

constexpr double kBox = 30.0;

struct Parts {
    double s = 0.0, s_rho = 0.0, s_z = 0.0, s_rhorho = 0.0, s_zz = 0.0;
    double s_rho_over_rho = 0.0; // regular on the axis
};

// All derivatives at (rho, |z|); the caller restores the sign of S_z.
Parts evaluate(MagneticVariant v, double B, double rho, double z) {
    const double r = std::hypot(rho, z), r3 = r * r * r;
    Parts p;
    p.s = -r;
    p.s_rho = -rho / r;
    p.s_z = -z / r;
    p.s_rhorho = -z * z / r3;
    p.s_zz = -rho * rho / r3;
    p.s_rho_over_rho = -1.0 / r;
    if (v == MagneticVariant::lower) {
        return p;
    }
    p.s -= 0.25 * B * rho * rho;
    p.s_rho -= 0.5 * B * rho;
    p.s_rhorho -= 0.5 * B;
    p.s_rho_over_rho -= 0.5 * B;
    if (v == MagneticVariant::upper) {
        return p;
    }
    // T = P/D with P = rho^2 w, w = r - z, D = rho^2 + c r.
    const double c = 5.0 / std::sqrt(B);
    const double rho2 = rho * rho, w = r - z;
    const double P = rho2 * w;
    const double P_rho = 2.0 * rho * w + rho2 * rho / r;
    const double P_rho_over_rho = 2.0 * w + rho2 / r;
    const double P_z = rho2 * (z / r - 1.0);
    const double P_rhorho = 2.0 * w + 5.0 * rho2 / r - rho2 * rho2 / r3;
    const double P_zz = rho2 * rho2 / r3;
    const double D = rho2 + c * r;
    const double D_rho = 2.0 * rho + c * rho / r;
    const double D_rho_over_rho = 2.0 + c / r;
    const double D_z = c * z / r;
    const double D_rhorho = 2.0 + c * z * z / r3;
    const double D_zz = c * rho2 / r3;
    const double D2 = D * D, D3 = D2 * D;
    p.s += P / D;
    p.s_rho += P_rho / D - P * D_rho / D2;
    p.s_z += P_z / D - P * D_z / D2;
    p.s_rho_over_rho += P_rho_over_rho / D - P * D_rho_over_rho / D2;
    p.s_rhorho += P_rhorho / D - 2.0 * P_rho * D_rho / D2 - P * D_rhorho / D2 + 2.0 * P * D_rho * D_rho / D3;
    p.s_zz += P_zz / D - 2.0 * P_z * D_z / D2 - P * D_zz / D2 + 2.0 * P * D_z * D_z / D3;
    return p;
}

Parts evaluate_signed(MagneticVariant v, double B, std::span<const double> q) {
    Parts p = evaluate(v, B, q[0], std::abs(q[1]));
    if (q[1] < 0.0) {
        p.s_z = -p.s_z;
    }
    return p;
}

Domain half_plane() {
    Domain d;
    d.dimension = 2;
    d.coordinates = CoordinateSystem::cylindrical;
    d.coordinate_ranges = {{0.0, kInf}, {0.0, kInf}};
    return d;
}

} // namespace

Hamiltonian MagneticHydrogen::hamiltonian() const {
    const double B = b_;
    Hamiltonian h;
    h.inverse_mass = InverseMassForm::scalar(2, 0.5);
    h.potential = [B](std::span<const double> q) {
        return B * B * q[0] * q[0] / 8.0 - 1.0 / std::hypot(q[0], q[1]);
    };
    h.domain = half_plane();
    return h;
}

LogTrialFunction MagneticHydrogen::trial(MagneticVariant v) const {
    if (v == MagneticVariant::improved && !(b_ > 0.0)) {
        throw InvalidArgument("improved magnetic trial requires B > 0");
    }
    const double B = b_;
    LogTrialFunction t;
    t.params = {B};
    t.value = [v, B](std::span<const double> q) {
        // Every term vanishes at the nucleus; the formulas there are 0/0.
        return q[0] == 0.0 && q[1] == 0.0 ? 0.0 : evaluate_signed(v, B, q).s;
    };
    t.gradient = [v, B](std::span<const double> q) {
        const Parts p = evaluate_signed(v, B, q);
        return std::vector<double>{p.s_rho, p.s_z};
    };
    t.laplacian = [v, B](std::span<const double> q) {
        const Parts p = evaluate_signed(v, B, q);
        return p.s_rhorho + p.s_rho_over_rho + p.s_zz;
    };
    t.normalizable = true;
    t.normalizability_note = "S <= -r";
    return t;
}

double MagneticHydrogen::cusp_residual(MagneticVariant v) const {
    if (v == MagneticVariant::improved && !(b_ > 0.0)) {
        throw InvalidArgument("improved magnetic trial requires B > 0");
    }
    double worst = std::abs(evaluate(v, b_, 0.0, 1e-12).s_z + 1.0);
    for (double r : {0.1, 1.0, 10.0}) {
        worst = std::max(worst, std::abs(evaluate(v, b_, 0.0, r).s_rho));
    }
    return worst;
}

LocalEnergyField magnetic_hydrogen_field(const MagneticHydrogen &mh, MagneticVariant v) {
    const double residual = mh.cusp_residual(v);
    if (!(residual <= 1e-10)) {
        throw NumericalFailure("magnetic trial violates a cusp condition (residual " + std::to_string(residual) + ")");
    }
    const Hamiltonian h = mh.hamiltonian();
    LocalEnergyField::Representation log = LocalEnergyField::log_form(h, mh.trial(v));
    const ScalarField eval = log.eval;
    const double B = mh.field_strength();

    Domain d = h.domain;
    // The Coulomb pole cancels against the cusp: E_loc stays bounded at the
    // origin, so points in the tube are evaluated at 10 tube radii along the
    // same direction (the z axis if exactly at the origin).
    const double tube = d.singular_tube;
    d.singular_sets.push_back(SingularSet{"origin", [](std::span<const double> q) { return std::hypot(q[0], q[1]); },
                                          std::nullopt, std::nullopt, [eval, tube](std::span<const double> q) {
                                              const double r = std::hypot(q[0], q[1]);
                                              std::vector<double> p{0.0, 10.0 * tube};
                                              if (r > 0.0) {
                                                  p = {10.0 * tube * q[0] / r, 10.0 * tube * std::abs(q[1]) / r};
                                              }
                                              return eval(p);
                                          }});

    Asymptotics asym;
    asym.control = AsymptoticControl::limits;
    switch (v) {
    case MagneticVariant::lower:
        // E = B^2 rho^2/8 - 1/2: -1/2 along the axis, +inf off it.
        asym.limits.push_back({"r -> inf", -0.5, kInf});
        break;
    case MagneticVariant::upper:
        // E = -1/2 + B/2 - B rho^2/(2r): B/2 - 1/2 along the axis, -inf off it.
        asym.limits.push_back({"r -> inf", -kInf, 0.5 * B - 0.5});
        break;
    case MagneticVariant::improved: {
        // Along polar angle alpha: B/2 - 1/2 + 5 sqrt(B) (cos(a)/2 - 1 + 1/(1 + cos(a))),
        // minimal at cos(a) = sqrt(2) - 1 and maximal on the axis.
        const double base = 0.5 * B - 0.5;
        asym.limits.push_back({"r -> inf", base + 5.0 * std::sqrt(B) * (std::sqrt(2.0) - 1.5), base});
        // |z| is not smooth at z = 0: -Delta|z| = -2 delta(z) times rho^2 rho^2/D
        // makes H phi / phi carry a positive delta on the plane.
        d.singular_sets.push_back(SingularSet{"plane z=0", [](std::span<const double> q) { return std::abs(q[1]); },
                                              std::nullopt, kInf, [eval](std::span<const double> q) {
                                                  return eval(std::vector<double>{q[0], 0.0});
                                              }});
        break;
    }
    }
    std::vector<Interval> box{{0.0, kBox}, {0.0, kBox}};
    return LocalEnergyField(std::move(d), {std::move(log)}, std::move(asym), std::move(box));
}

} // namespace groundbound
