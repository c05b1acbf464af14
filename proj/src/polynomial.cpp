#include "groundbound/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

namespace groundbound {

MultivariatePolynomial::MultivariatePolynomial(std::size_t dimension) : dim_(dimension) {
    if (dim_ == 0) {
        throw InvalidArgument("polynomial dimension must be positive");
    }
}

MultivariatePolynomial MultivariatePolynomial::constant(std::size_t dimension, double c) {
    MultivariatePolynomial p(dimension);
    p.add_term(Exponent(dimension, 0), c);
    return p;
}

MultivariatePolynomial MultivariatePolynomial::variable(std::size_t dimension, std::size_t i) {
    if (i >= dimension) {
        throw InvalidArgument("variable index out of range");
    }
    MultivariatePolynomial p(dimension);
    Exponent e(dimension, 0);
    e[i] = 1;
    p.add_term(e, 1.0);
    return p;
}

int MultivariatePolynomial::degree() const {
    int d = -1;
    for (const auto &[e, c] : terms_) {
        d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
    }
    return d;
}

void MultivariatePolynomial::add_term(const Exponent &e, double c) {
    if (e.size() != dim_) {
        throw InvalidArgument("exponent length does not match polynomial dimension");
    }
    if (c == 0.0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) {
            terms_.erase(it);
        }
    }
}

double MultivariatePolynomial::coefficient(const Exponent &e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
}

void MultivariatePolynomial::check(const MultivariatePolynomial &o) const {
    if (o.dim_ != dim_) {
        throw InvalidArgument("polynomial dimensions differ");
    }
}

MultivariatePolynomial MultivariatePolynomial::operator+(const MultivariatePolynomial &o) const {
    check(o);
    MultivariatePolynomial r = *this;
    for (const auto &[e, c] : o.terms_) {
        r.add_term(e, c);
    }
    return r;
}

MultivariatePolynomial MultivariatePolynomial::operator-(const MultivariatePolynomial &o) const {
    return *this + o * -1.0;
}

MultivariatePolynomial MultivariatePolynomial::operator*(const MultivariatePolynomial &o) const {
    check(o);
    MultivariatePolynomial r(dim_);
    for (const auto &[ea, ca] : terms_) {
        for (const auto &[eb, cb] : o.terms_) {
            Exponent e(dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                e[i] = ea[i] + eb[i];
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultivariatePolynomial MultivariatePolynomial::operator*(double s) const {
    MultivariatePolynomial r(dim_);
    for (const auto &[e, c] : terms_) {
        r.add_term(e, c * s);
    }
    return r;
}

MultivariatePolynomial MultivariatePolynomial::derivative(std::size_t i) const {
    if (i >= dim_) {
        throw InvalidArgument("derivative index out of range");
    }
    MultivariatePolynomial r(dim_);
    for (const auto &[e, c] : terms_) {
        if (e[i] == 0) {
            continue;
        }
        Exponent d = e;
        --d[i];
        r.add_term(d, c * e[i]);
    }
    return r;
}

MultivariatePolynomial MultivariatePolynomial::laplacian() const {
    MultivariatePolynomial r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        r = r + derivative(i).derivative(i);
    }
    return r;
}

double MultivariatePolynomial::operator()(std::span<const double> q) const {
    if (q.size() != dim_) {
        throw InvalidArgument("point dimension does not match polynomial");
    }
    double s = 0.0;
    for (const auto &[e, c] : terms_) {
        double t = c;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (unsigned k = 0; k < e[i]; ++k) {
                t *= q[i];
            }
        }
        s += t;
    }
    return s;
}

double MultivariatePolynomial::max_coefficient_difference(const MultivariatePolynomial &o) const {
    double m = 0.0;
    for (const auto &[e, c] : (*this - o).terms_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

std::vector<MultivariatePolynomial::Exponent> monomials_up_to(std::size_t dimension, int degree) {
    std::vector<MultivariatePolynomial::Exponent> out;
    if (degree < 0) {
        return out;
    }
    MultivariatePolynomial::Exponent e(dimension, 0);
    // Enumerate by total degree, then lexicographically within a degree.
    for (int total = 0; total <= degree; ++total) {
        std::vector<MultivariatePolynomial::Exponent> level;
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
            if (i + 1 == dimension) {
                e[i] = static_cast<unsigned>(left);
                level.push_back(e);
                return;
            }
            for (int k = left; k >= 0; --k) {
                e[i] = static_cast<unsigned>(k);
                rec(i + 1, left - k);
            }
        };
        rec(0, total);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

namespace {

MultivariatePolynomial monomial(std::size_t dim, const MultivariatePolynomial::Exponent &e) {
    MultivariatePolynomial p(dim);
    p.add_term(e, 1.0);
    return p;
}

std::vector<std::vector<double>> interior_samples(const MultivariatePolynomial &b, const std::vector<Interval> &box,
                                                  std::size_t per_axis) {
    const std::size_t d = b.dimension();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        total *= per_axis;
    }
    std::vector<std::vector<double>> out;
    std::vector<double> q(d);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t r = k;
        for (std::size_t i = 0; i < d; ++i) {
            q[i] = box[i].lo + box[i].width() * static_cast<double>(r % per_axis) / static_cast<double>(per_axis - 1);
            r /= per_axis;
        }
        if (b(q) < 0.0) {
            out.push_back(q);
        }
    }
    return out;
}

} // namespace

BartaOutcome barta_polynomial_construction(const MultivariatePolynomial &b, int n, const std::vector<Interval> &sample_box,
                                           std::size_t samples_per_axis) {
    BartaOutcome out;
    const std::size_t d = b.dimension();
    if (sample_box.size() != d) {
        throw InvalidArgument("sample box must have one interval per dimension");
    }
    if (b.degree() < 1) {
        throw InvalidArgument("boundary polynomial must be non-constant");
    }
    if (n < 2) {
        out.diagnostic = "degree " + std::to_string(n) + " leaves g with negative degree; Delta(f b) = g b has only the trivial solution";
        return out;
    }
    const auto f_mons = monomials_up_to(d, n);
    const auto g_mons = monomials_up_to(d, n - 2);
    const auto rows = monomials_up_to(d, n + b.degree());
    std::map<MultivariatePolynomial::Exponent, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        row_of[rows[i]] = i;
    }

    const auto cols = static_cast<Eigen::Index>(f_mons.size() + g_mons.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), cols);
    Eigen::Index col = 0;
    for (const auto &e : f_mons) {
        const MultivariatePolynomial image = (monomial(d, e) * b).laplacian();
        for (const auto &[ex, c] : image.terms()) {
            m(static_cast<Eigen::Index>(row_of.at(ex)), col) += c;
        }
        ++col;
    }
    for (const auto &e : g_mons) {
        const MultivariatePolynomial image = monomial(d, e) * b;
        for (const auto &[ex, c] : image.terms()) {
            m(static_cast<Eigen::Index>(row_of.at(ex)), col) -= c;
        }
        ++col;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    std::vector<Eigen::VectorXd> null_basis;
    for (Eigen::Index j = 0; j < cols; ++j) {
        const double s = j < sv.size() ? sv(j) : 0.0;
        if (s <= 1e-10 * smax) {
            null_basis.push_back(svd.matrixV().col(j));
        }
    }
    if (null_basis.empty()) {
        out.diagnostic = "linear system Delta(f b) = g b has no non-trivial solution at degree " + std::to_string(n);
        return out;
    }

    const auto samples = interior_samples(b, sample_box, samples_per_axis);
    if (samples.empty()) {
        throw InvalidArgument("no interior sample points in the sample box");
    }

    auto assemble = [&](const Eigen::VectorXd &v) {
        MultivariatePolynomial f(d), g(d);
        const double scale = v.head(static_cast<Eigen::Index>(f_mons.size())).cwiseAbs().maxCoeff();
        for (std::size_t i = 0; i < f_mons.size(); ++i) {
            f.add_term(f_mons[i], v(static_cast<Eigen::Index>(i)) / scale);
        }
        for (std::size_t i = 0; i < g_mons.size(); ++i) {
            g.add_term(g_mons[i], v(static_cast<Eigen::Index>(f_mons.size() + i)) / scale);
        }
        return std::pair{f, g};
    };
    auto one_signed = [&](MultivariatePolynomial &f, MultivariatePolynomial &g) {
        double lo = kInf, hi = -kInf;
        for (const auto &q : samples) {
            const double v = f(q);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo > 0.0) {
            return true;
        }
        if (hi < 0.0) {
            f = f * -1.0;
            g = g * -1.0;
            return true;
        }
        return false;
    };

    std::vector<Eigen::VectorXd> trials = null_basis;
    if (null_basis.size() > 1) {
        std::mt19937_64 rng(12345);
        std::normal_distribution<double> nd;
        for (int t = 0; t < 200; ++t) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(cols);
            for (const auto &nb : null_basis) {
                v += nd(rng) * nb;
            }
            trials.push_back(v);
        }
    }
    for (const auto &v : trials) {
        if (v.head(static_cast<Eigen::Index>(f_mons.size())).cwiseAbs().maxCoeff() == 0.0) {
            continue;
        }
        auto [f, g] = assemble(v);
        if (!one_signed(f, g)) {
            continue;
        }
        const double residual = ((f * b).laplacian() - g * b).max_coefficient_difference(MultivariatePolynomial(d));
        if (residual > 1e-10) {
            continue;
        }
        out.solution = BartaPair{f, g, residual};
        out.diagnostic = "null space dimension " + std::to_string(null_basis.size());
        return out;
    }
    out.diagnostic = "no solution with f of one sign on the interior at degree " + std::to_string(n) +
                     " (null space dimension " + std::to_string(null_basis.size()) + ")";
    return out;
}

LocalEnergyField barta_local_energy_field(const MultivariatePolynomial &b, const BartaPair &pair, std::vector<Interval> box) {
    const std::size_t d = b.dimension();
    const MultivariatePolynomial f = pair.f, g = pair.g;
    const MultivariatePolynomial phi = f * b;
    const MultivariatePolynomial h_phi = phi.laplacian() * -0.5;
    std::vector<MultivariatePolynomial> grad_b;
    for (std::size_t i = 0; i < d; ++i) {
        grad_b.push_back(b.derivative(i));
    }

    ScalarField closed = [f, g](std::span<const double> q) { return -g(q) / (2.0 * f(q)); };

    Domain dom;
    dom.dimension = d;
    dom.constraint = [b](std::span<const double> q) { return b(q); };
    dom.singular_sets.push_back(SingularSet{
        "boundary",
        [b, grad_b](std::span<const double> q) {
            double g2 = 0.0;
            for (const auto &gi : grad_b) {
                g2 += gi(q) * gi(q);
            }
            return g2 > 0.0 ? std::abs(b(q)) / std::sqrt(g2) : kInf;
        },
        std::nullopt, std::nullopt, closed});

    return LocalEnergyField(std::move(dom),
                            {{"closed-form", closed},
                             LocalEnergyField::ratio_form({[phi](std::span<const double> q) { return phi(q); },
                                                           [h_phi](std::span<const double> q) { return h_phi(q); }})},
                            {}, std::move(box));
}

} // namespace groundbound
