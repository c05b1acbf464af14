#include "groundbound/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace groundbound {

bool Point::all_finite() const {
    return std::all_of(coords.begin(), coords.end(), [](double x) { return std::isfinite(x); });
}

bool Domain::interior(std::span<const double> q) const {
    if (q.size() != dimension) {
        return false;
    }
    for (std::size_t i = 0; i < coordinate_ranges.size() && i < q.size(); ++i) {
        if (!coordinate_ranges[i].contains(q[i])) {
            return false;
        }
    }
    if (constraint && !(constraint(q) < 0.0)) {
        return false;
    }
    return true;
}

const SingularSet *Domain::singular_at(std::span<const double> q) const {
    for (const auto &s : singular_sets) {
        if (s.distance(q) < singular_tube) {
            return &s;
        }
    }
    return nullptr;
}

void Domain::validate() const {
    if (dimension == 0) {
        throw InvalidArgument("domain dimension must be positive");
    }
    if (!coordinate_ranges.empty() && coordinate_ranges.size() != dimension) {
        throw InvalidArgument("coordinate_ranges must have one entry per dimension");
    }
    if (coordinates == CoordinateSystem::cylindrical && dimension != 2) {
        throw InvalidArgument("cylindrical coordinates are (rho, z)");
    }
    if (coordinates == CoordinateSystem::radial && dimension != 1) {
        throw InvalidArgument("radial coordinates are (r)");
    }
    for (const auto &s : singular_sets) {
        if (!s.distance) {
            throw InvalidArgument("singular set '" + s.name + "' has no distance function");
        }
    }
}

InverseMassForm::InverseMassForm(std::size_t dimension, std::vector<double> row_major)
    : dim_(dimension), a_(std::move(row_major)) {
    if (dim_ == 0 || a_.size() != dim_ * dim_) {
        throw InvalidArgument("inverse-mass form has wrong size");
    }
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double x = a_[i * dim_ + j], y = a_[j * dim_ + i];
            if (std::abs(x - y) > 1e-14 * std::max({1.0, std::abs(x), std::abs(y)})) {
                throw InvalidArgument("inverse-mass form is not symmetric");
            }
        }
    }
    // Cholesky: positive pivots iff positive definite.
    std::vector<double> l(a_);
    for (std::size_t j = 0; j < dim_; ++j) {
        double d = l[j * dim_ + j];
        for (std::size_t k = 0; k < j; ++k) {
            d -= l[j * dim_ + k] * l[j * dim_ + k];
        }
        if (!(d > 0.0)) {
            throw InvalidArgument("inverse-mass form is not positive definite");
        }
        d = std::sqrt(d);
        l[j * dim_ + j] = d;
        for (std::size_t i = j + 1; i < dim_; ++i) {
            double s = l[i * dim_ + j];
            for (std::size_t k = 0; k < j; ++k) {
                s -= l[i * dim_ + k] * l[j * dim_ + k];
            }
            l[i * dim_ + j] = s / d;
        }
    }
    scalar_ = true;
    for (std::size_t i = 0; i < dim_ && scalar_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            const double expect = i == j ? a_[0] : 0.0;
            if (a_[i * dim_ + j] != expect) {
                scalar_ = false;
                break;
            }
        }
    }
}

InverseMassForm InverseMassForm::scalar(std::size_t dimension, double c) {
    std::vector<double> a(dimension * dimension, 0.0);
    for (std::size_t i = 0; i < dimension; ++i) {
        a[i * dimension + i] = c;
    }
    return InverseMassForm(dimension, std::move(a));
}

void Hamiltonian::validate() const {
    domain.validate();
    if (inverse_mass.dimension() != domain.dimension) {
        throw InvalidArgument("inverse-mass form and domain dimensions differ");
    }
    if (!potential) {
        throw InvalidArgument("hamiltonian has no potential");
    }
    if (domain.coordinates != CoordinateSystem::cartesian && !inverse_mass.is_scalar()) {
        throw InvalidArgument("curvilinear coordinates require a scalar inverse-mass form");
    }
}

double local_energy_log(const Hamiltonian &h, const LogTrialFunction &t, std::span<const double> q) {
    const std::size_t d = h.domain.dimension;
    if (q.size() != d) {
        throw InvalidArgument("point dimension does not match hamiltonian");
    }
    const std::vector<double> g = t.gradient(q);
    double kinetic = 0.0;
    if (h.inverse_mass.is_scalar()) {
        double g2 = 0.0;
        for (double gi : g) {
            g2 += gi * gi;
        }
        kinetic = h.inverse_mass.scalar_value() * (t.laplacian(q) + g2);
    } else {
        if (!t.hessian) {
            throw InvalidArgument("non-scalar inverse-mass form needs the trial Hessian");
        }
        const std::vector<double> hess = t.hessian(q);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                kinetic += h.inverse_mass(i, j) * (hess[i * d + j] + g[i] * g[j]);
            }
        }
    }
    const double e = h.potential(q) - kinetic;
    if (!std::isfinite(e)) {
        throw NumericalFailure("non-finite local energy (trial/hamiltonian mismatch or singular point)");
    }
    return e;
}

double local_energy_ratio(const RatioTrialFunction &t, std::span<const double> q) {
    const double phi = t.phi(q);
    if (phi == 0.0) {
        throw SingularEvaluation("trial function vanishes at the evaluation point");
    }
    return t.h_phi(q) / phi;
}

LocalEnergyField::LocalEnergyField(Domain domain, std::vector<Representation> representations,
                                   Asymptotics asymptotics, std::vector<Interval> default_box)
    : domain_(std::move(domain)), reps_(std::move(representations)), asymptotics_(std::move(asymptotics)),
      default_box_(std::move(default_box)) {
    domain_.validate();
    if (reps_.empty()) {
        throw InvalidArgument("local energy field needs at least one representation");
    }
    if (!default_box_.empty() && default_box_.size() != domain_.dimension) {
        throw InvalidArgument("default box must have one interval per dimension");
    }
    if (!domain_.bounded() && asymptotics_.control == AsymptoticControl::bounded_domain) {
        throw InvalidArgument("unbounded domain requires asymptotic control");
    }
}

double LocalEnergyField::operator()(std::span<const double> q) const {
    if (const SingularSet *s = domain_.singular_at(q)) {
        if (!s->continuation) {
            throw SingularEvaluation("point lies on singular set '" + s->name + "'");
        }
        return s->continuation(q);
    }
    return reps_.front().eval(q);
}

double LocalEnergyField::evaluate(std::size_t representation, std::span<const double> q) const {
    return reps_.at(representation).eval(q);
}

bool LocalEnergyField::admissible(std::span<const double> q) const {
    if (!domain_.interior(q)) {
        return false;
    }
    const SingularSet *s = domain_.singular_at(q);
    return s == nullptr || static_cast<bool>(s->continuation);
}

LocalEnergyField::Representation LocalEnergyField::log_form(const Hamiltonian &h, LogTrialFunction t) {
    h.validate();
    return {"log-form", [h, t = std::move(t)](std::span<const double> q) { return local_energy_log(h, t, q); }};
}

LocalEnergyField::Representation LocalEnergyField::ratio_form(RatioTrialFunction t) {
    return {"ratio-form", [t = std::move(t)](std::span<const double> q) { return local_energy_ratio(t, q); }};
}

LocalEnergyField TrialSystem::field() const {
    return LocalEnergyField(hamiltonian.domain, {LocalEnergyField::log_form(hamiltonian, trial)}, asymptotics, box);
}

CrossCheckReport cross_check_field(const LocalEnergyField &f, std::size_t n_samples, unsigned long long seed,
                                   std::size_t first, std::size_t second, double tolerance) {
    if (f.representations().size() < 2 && first != second) {
        throw InvalidArgument("cross-check needs two representations");
    }
    const auto &box = f.default_box();
    if (box.size() != f.dimension()) {
        throw InvalidArgument("cross-check needs a finite default box");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::uniform_real_distribution<double>> axes;
    for (const auto &iv : box) {
        axes.emplace_back(iv.lo, iv.hi);
    }
    CrossCheckReport report;
    std::vector<double> q(f.dimension());
    const std::size_t max_attempts = 1000 * std::max<std::size_t>(n_samples, 1);
    for (std::size_t attempt = 0; attempt < max_attempts && report.samples < n_samples; ++attempt) {
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] = axes[i](rng);
        }
        if (!f.domain().interior(q) || f.domain().singular_at(q) != nullptr) {
            continue;
        }
        const double a = f.evaluate(first, q);
        const double b = f.evaluate(second, q);
        const double rel = std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
        if (report.samples == 0 || rel > report.max_discrepancy) {
            report.max_discrepancy = rel;
            report.worst_point = Point(q);
        }
        ++report.samples;
    }
    if (report.samples == 0) {
        throw SingularEvaluation("cross-check found no admissible sample points");
    }
    report.passed = report.max_discrepancy <= tolerance;
    return report;
}

bool BoundsResult::finite() const { return std::isfinite(lower) && std::isfinite(upper); }

} // namespace groundbound
