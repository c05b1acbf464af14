#include "groundbound/coulomb.hpp"

#include <algorithm>
#include <cmath>

namespace groundbound {

CoulombSystem::CoulombSystem(std::size_t space_dimension, std::vector<Particle> particles,
                             bool infinite_reference_mass)
    : dim_(space_dimension), particles_(std::move(particles)), infinite_ref_(infinite_reference_mass) {
    if (dim_ < 2) {
        throw InvalidArgument("coulomb system: cusp cancellation needs D >= 2");
    }
    if (particles_.size() < 2) {
        throw InvalidArgument("coulomb system: need at least two particles");
    }
    for (std::size_t i = 0; i < particles_.size(); ++i) {
        if (i == 0 && infinite_ref_) {
            continue;
        }
        if (!(particles_[i].mass > 0.0) || !std::isfinite(particles_[i].mass)) {
            throw InvalidArgument("coulomb system: masses must be finite and positive");
        }
        if (!std::isfinite(particles_[i].charge)) {
            throw InvalidArgument("coulomb system: charges must be finite");
        }
    }
}

double CoulombSystem::inverse_mass(std::size_t i) const {
    if (i == 0 && infinite_ref_) {
        return 0.0;
    }
    return 1.0 / particles_.at(i).mass;
}

double CoulombSystem::reduced_mass(std::size_t i, std::size_t j) const {
    return 1.0 / (inverse_mass(i) + inverse_mass(j));
}

double CoulombSystem::cusp(std::size_t i, std::size_t j) const {
    return -2.0 * reduced_mass(i, j) * particles_.at(i).charge * particles_.at(j).charge /
           static_cast<double>(dim_ - 1);
}

namespace {

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

// Relative vector from particle i to particle j (particle 0 at the origin).
std::vector<double> separation(std::span<const double> q, std::size_t dim, std::size_t i, std::size_t j) {
    std::vector<double> v(dim, 0.0);
    for (std::size_t a = 0; a < dim; ++a) {
        const double xi = i == 0 ? 0.0 : q[(i - 1) * dim + a];
        const double xj = j == 0 ? 0.0 : q[(j - 1) * dim + a];
        v[a] = xj - xi;
    }
    return v;
}

} // namespace

Hamiltonian CoulombSystem::hamiltonian() const {
    const std::size_t n = particles_.size(), d = dim_, m = configuration_dimension();
    std::vector<double> a(m * m, 0.0);
    const double off = 0.5 * inverse_mass(0);
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t l = 1; l < n; ++l) {
            const double v = k == l ? 0.5 / reduced_mass(0, k) : off;
            for (std::size_t c = 0; c < d; ++c) {
                a[((k - 1) * d + c) * m + (l - 1) * d + c] = v;
            }
        }
    }
    Hamiltonian h;
    h.inverse_mass = InverseMassForm(m, std::move(a));
    std::vector<double> charges;
    for (const auto &p : particles_) {
        charges.push_back(p.charge);
    }
    h.potential = [charges, d](std::span<const double> q) {
        double v = 0.0;
        for (std::size_t i = 0; i < charges.size(); ++i) {
            for (std::size_t j = i + 1; j < charges.size(); ++j) {
                v += charges[i] * charges[j] / norm(separation(q, d, i, j));
            }
        }
        return v;
    };
    h.domain.dimension = m;
    return h;
}

LogTrialFunction CoulombSystem::trial() const {
    const std::size_t n = particles_.size(), d = dim_, m = configuration_dimension();
    std::vector<double> lam(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                lam[i * n + j] = cusp(i, j);
            }
        }
    }
    LogTrialFunction t;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            t.params.push_back(lam[i * n + j]);
        }
    }
    t.value = [lam, n, d](std::span<const double> q) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                s -= lam[i * n + j] * norm(separation(q, d, i, j));
            }
        }
        return s;
    };
    // d r_ij / d x_j = u_ij = (x_j - x_i)/r_ij and -u_ij for x_i; particle 0 is fixed.
    t.gradient = [lam, n, d, m](std::span<const double> q) {
        std::vector<double> g(m, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto v = separation(q, d, i, j);
                const double r = norm(v);
                for (std::size_t c = 0; c < d; ++c) {
                    const double u = -lam[i * n + j] * v[c] / r;
                    g[(j - 1) * d + c] += u;
                    if (i > 0) {
                        g[(i - 1) * d + c] -= u;
                    }
                }
            }
        }
        return g;
    };
    // Hessian of r = |v| is (I - v v^T / r^2) / r.
    t.hessian = [lam, n, d, m](std::span<const double> q) {
        std::vector<double> h(m * m, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto v = separation(q, d, i, j);
                const double r = norm(v);
                const double w = -lam[i * n + j] / r;
                for (std::size_t a = 0; a < d; ++a) {
                    for (std::size_t b = 0; b < d; ++b) {
                        const double p = w * ((a == b ? 1.0 : 0.0) - v[a] * v[b] / (r * r));
                        const std::size_t ja = (j - 1) * d + a, jb = (j - 1) * d + b;
                        h[ja * m + jb] += p;
                        if (i > 0) {
                            const std::size_t ia = (i - 1) * d + a, ib = (i - 1) * d + b;
                            h[ia * m + ib] += p;
                            h[ia * m + jb] -= p;
                            h[ja * m + ib] -= p;
                        }
                    }
                }
            }
        }
        return h;
    };
    // Cartesian Laplacian in relative coordinates: each pair contributes (D-1)/r
    // once per moving endpoint.
    t.laplacian = [lam, n, d](std::span<const double> q) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double r = norm(separation(q, d, i, j));
                s -= lam[i * n + j] * (i > 0 ? 2.0 : 1.0) * static_cast<double>(d - 1) / r;
            }
        }
        return s;
    };
    // Sufficient condition: a repulsive pair term obeys r_kj <= r_0k + r_0j,
    // so exp S decays if every lambda_0k beats the repulsive terms it absorbs.
    t.normalizable = true;
    for (std::size_t k = 1; k < n; ++k) {
        double margin = lam[k];
        for (std::size_t j = 1; j < n; ++j) {
            if (j != k && lam[k * n + j] < 0.0) {
                margin += lam[k * n + j];
            }
        }
        if (!(margin > 0.0)) {
            t.normalizable = false;
        }
    }
    t.normalizability_note = t.normalizable ? "every particle is bound to particle 0 with positive net decay rate"
                                            : "decay condition lambda_0k > sum of repulsive |lambda_kj| fails; "
                                              "exp S may not be square integrable";
    return t;
}

ParticleConfiguration::ParticleConfiguration(std::size_t space_dimension, std::vector<double> relative_positions)
    : dim_(space_dimension), q_(std::move(relative_positions)) {
    if (dim_ == 0 || q_.size() % dim_ != 0) {
        throw InvalidArgument("particle configuration: coordinate count is not a multiple of D");
    }
    n_ = q_.size() / dim_ + 1;
}

std::vector<double> ParticleConfiguration::position(std::size_t i) const { return separation(q_, dim_, 0, i); }

double ParticleConfiguration::distance(std::size_t i, std::size_t j) const {
    return norm(separation(q_, dim_, i, j));
}

double ParticleConfiguration::cos_angle(std::size_t j, std::size_t i, std::size_t k) const {
    const double a = distance(i, j), b = distance(i, k), c = distance(j, k);
    return std::clamp((a * a + b * b - c * c) / (2.0 * a * b), -1.0, 1.0);
}

double coulomb_local_energy(const CoulombSystem &cs, const ParticleConfiguration &pc) {
    const std::size_t n = cs.particle_count();
    if (pc.particle_count() != n) {
        throw InvalidArgument("configuration particle count does not match system");
    }
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (pc.distance(i, j) == 0.0) {
                throw SingularEvaluation("coincident particles");
            }
            const double l = cs.cusp(i, j);
            e -= l * l / (2.0 * cs.reduced_mass(i, j));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double inv_m = cs.inverse_mass(i);
        if (inv_m == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (j == i || k == i) {
                    continue;
                }
                e -= cs.cusp(i, j) * cs.cusp(i, k) * pc.cos_angle(j, i, k) * inv_m;
            }
        }
    }
    return e;
}

LocalEnergyField coulomb_local_energy_field(const CoulombSystem &cs) {
    const std::size_t d = cs.space_dimension(), m = cs.configuration_dimension(), n = cs.particle_count();
    const Hamiltonian h = cs.hamiltonian();
    auto closed = [cs, d](std::span<const double> q) {
        return coulomb_local_energy(cs, ParticleConfiguration(d, std::vector<double>(q.begin(), q.end())));
    };
    Domain dom = h.domain;
    const double tube = dom.singular_tube;
    // Every particle closer than 10 tube radii to an earlier one is moved out
    // to that distance along their separation (a coordinate axis if they
    // coincide). The poles cancel, so the angle-only closed form there is a
    // directional limit; several passes settle multiple coalescences.
    auto continuation = [closed, d, n, tube](std::span<const double> q) {
        std::vector<double> p(q.begin(), q.end());
        const double gap = 10.0 * tube;
        for (int pass = 0; pass < 4; ++pass) {
            bool moved = false;
            for (std::size_t j = 1; j < n; ++j) {
                for (std::size_t i = 0; i < j; ++i) {
                    auto v = separation(p, d, i, j);
                    double r = norm(v);
                    if (r >= gap * (1.0 - 1e-12)) {
                        continue;
                    }
                    if (r == 0.0) {
                        v.assign(d, 0.0);
                        v[(i + j + pass) % d] = 1.0;
                        r = 1.0;
                    }
                    for (std::size_t c = 0; c < d; ++c) {
                        const double xi = i == 0 ? 0.0 : p[(i - 1) * d + c];
                        p[(j - 1) * d + c] = xi + gap * v[c] / r;
                    }
                    moved = true;
                }
            }
            if (!moved) {
                break;
            }
        }
        return closed(p);
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            dom.singular_sets.push_back(SingularSet{
                "coalescence(" + std::to_string(i) + "," + std::to_string(j) + ")",
                [d, i, j](std::span<const double> q) { return norm(separation(q, d, i, j)); }, std::nullopt,
                std::nullopt, continuation});
        }
    }
    Asymptotics asym;
    asym.control = AsymptoticControl::dilation_invariant;
    return LocalEnergyField(std::move(dom), {{"closed-form", closed}, LocalEnergyField::log_form(h, cs.trial())},
                            std::move(asym), std::vector<Interval>(m, Interval{-1.0, 1.0}));
}

CoulombSystem helium_like(double Z) {
    return CoulombSystem(3, {{1.0, Z}, {1.0, -1.0}, {1.0, -1.0}}, true);
}

BoundsResult helium_bounds(double Z) {
    if (!(Z >= 1.0) || !std::isfinite(Z)) {
        throw InvalidArgument("helium bounds require Z >= 1");
    }
    BoundsResult r;
    r.lower = -Z * Z - 0.25;
    r.upper = -(Z - 0.5) * (Z - 0.5);
    r.analytic = true;
    // Same-side collinear electrons minimize, opposite sides maximize.
    r.lower_witness.kind = ExtremumKind::min;
    r.lower_witness.location = Point{1.0, 0.0, 0.0, 2.0, 0.0, 0.0};
    r.lower_witness.value = r.lower;
    r.upper_witness.kind = ExtremumKind::max;
    r.upper_witness.location = Point{1.0, 0.0, 0.0, -1.0, 0.0, 0.0};
    r.upper_witness.value = r.upper;
    return r;
}

} // namespace groundbound
