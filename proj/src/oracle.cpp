#include "groundbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace groundbound {

double Grid1D::spacing() const { return (x_max - x_min) / static_cast<double>(n - 1); }

void Grid1D::validate() const {
    if (n < 100) {
        throw InvalidArgument("1D grid needs at least 100 points");
    }
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw InvalidArgument("1D grid needs a finite interval with x_max > x_min");
    }
}

double Grid2D::spacing() const { return std::max(x.width(), y.width()) / static_cast<double>(n - 1); }

std::size_t Grid2D::nx() const { return static_cast<std::size_t>(std::llround(x.width() / spacing())) + 1; }

std::size_t Grid2D::ny() const { return static_cast<std::size_t>(std::llround(y.width() / spacing())) + 1; }

void Grid2D::validate() const {
    if (n < 10) {
        throw InvalidArgument("2D grid needs at least 10 points per axis");
    }
    for (const auto &iv : {x, y}) {
        if (!(iv.hi > iv.lo) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
            throw InvalidArgument("2D grid needs finite, non-empty intervals");
        }
    }
}

std::size_t sturm_count(std::span<const double> diag, std::span<const double> off, double x) {
    std::size_t count = 0;
    double d = 1.0;
    const double tiny = std::numeric_limits<double>::min();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double b2 = i > 0 ? off[i - 1] * off[i - 1] : 0.0;
        d = (diag[i] - x) - (i > 0 ? b2 / d : 0.0);
        if (d == 0.0) {
            d = -tiny;
        }
        if (d < 0.0) {
            ++count;
        }
    }
    return count;
}

double lowest_eigenvalue_tridiagonal(std::span<const double> diag, std::span<const double> off) {
    if (diag.empty() || off.size() + 1 != diag.size()) {
        throw InvalidArgument("tridiagonal matrix has inconsistent sizes");
    }
    // Gershgorin interval.
    double lo = kInf, hi = -kInf;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i < off.size() ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    hi += 1e-12 * std::max(1.0, std::abs(hi));
    lo -= 1e-12 * std::max(1.0, std::abs(lo));
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (sturm_count(diag, off, mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

void tridiagonal_hamiltonian(const ScalarField &V, const Grid1D &g, std::vector<double> &diag,
                             std::vector<double> &off) {
    g.validate();
    const double h = g.spacing();
    const std::size_t m = g.n - 2;
    diag.assign(m, 0.0);
    off.assign(m - 1, -0.5 / (h * h));
    for (std::size_t i = 0; i < m; ++i) {
        const double x = g.x_min + static_cast<double>(i + 1) * h;
        const double v = V(std::span<const double>(&x, 1));
        if (!std::isfinite(v)) {
            throw InvalidArgument("potential is not finite on the grid");
        }
        diag[i] = 1.0 / (h * h) + v;
    }
}

namespace {

// Inverse iteration with (T - mu) positive definite, solved by the Thomas algorithm.
std::vector<double> tridiagonal_eigenvector(const std::vector<double> &diag, const std::vector<double> &off,
                                            double lambda) {
    const std::size_t m = diag.size();
    const double mu = lambda - 1e-10 * std::max(1.0, std::abs(lambda));
    std::vector<double> x(m, 1.0), c(m), dd(m);
    for (int it = 0; it < 3; ++it) {
        dd[0] = diag[0] - mu;
        std::vector<double> y(x);
        for (std::size_t i = 1; i < m; ++i) {
            const double w = off[i - 1] / dd[i - 1];
            dd[i] = diag[i] - mu - w * off[i - 1];
            y[i] -= w * y[i - 1];
        }
        y[m - 1] /= dd[m - 1];
        for (std::size_t i = m - 1; i-- > 0;) {
            y[i] = (y[i] - off[i] * y[i + 1]) / dd[i];
        }
        double nrm = 0.0;
        for (double v : y) {
            nrm = std::max(nrm, std::abs(v));
        }
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = y[i] / nrm;
        }
    }
    return x;
}

} // namespace

OracleEstimate solve_1d_ground_state(const ScalarField &V, Grid1D g, const Oracle1DOptions &opt) {
    g.validate();
    if (!(opt.enlarge > 1.0)) {
        throw InvalidArgument("box enlargement factor must exceed 1");
    }
    OracleEstimate est;
    std::vector<double> diag, off;
    for (std::size_t attempt = 0;; ++attempt) {
        tridiagonal_hamiltonian(V, g, diag, off);
        const double e_c = lowest_eigenvalue_tridiagonal(diag, off);
        Grid1D fine{g.x_min, g.x_max, 2 * g.n - 1};
        tridiagonal_hamiltonian(V, fine, diag, off);
        const double e_f = lowest_eigenvalue_tridiagonal(diag, off);

        const auto psi = tridiagonal_eigenvector(diag, off, e_f);
        double peak = 0.0;
        for (double v : psi) {
            peak = std::max(peak, std::abs(v));
        }
        double edge = 0.0;
        if (!opt.left_wall) {
            edge = std::max(edge, std::abs(psi.front()) / peak);
        }
        if (!opt.right_wall) {
            edge = std::max(edge, std::abs(psi.back()) / peak);
        }

        est.coarse = e_c;
        est.fine = e_f;
        est.coarse_n = g.n;
        est.fine_n = fine.n;
        est.value = (4.0 * e_f - e_c) / 3.0;
        est.error_bar = std::abs(est.value - e_f);
        est.retries = attempt;
        est.edge_ratio = edge;
        est.x_range = {g.x_min, g.x_max};
        if (edge < opt.edge_tolerance) {
            return est;
        }
        if (attempt == opt.max_retries) {
            throw NumericalFailure("eigenfunction does not decay at the box edge (ratio " + std::to_string(edge) +
                                   ") after " + std::to_string(attempt) + " enlargements");
        }
        const double h = g.spacing(), w = g.x_max - g.x_min;
        const int open_sides = (opt.left_wall ? 0 : 1) + (opt.right_wall ? 0 : 1);
        const double grow = w * (opt.enlarge - 1.0) / open_sides;
        if (!opt.left_wall) {
            g.x_min -= grow;
        }
        if (!opt.right_wall) {
            g.x_max += grow;
        }
        g.n = static_cast<std::size_t>(std::llround((g.x_max - g.x_min) / h)) + 1;
    }
}

MaskedGrid build_mask(const Domain &d, const Grid2D &g) {
    g.validate();
    if (d.dimension != 2) {
        throw InvalidArgument("2D oracle needs a two-dimensional domain");
    }
    if (!d.bounded()) {
        throw InvalidArgument("2D oracle needs a bounded domain");
    }
    MaskedGrid m;
    m.grid = g;
    const std::size_t nx = g.nx(), ny = g.ny();
    const double h = g.spacing();
    m.index.assign(nx * ny, -1);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const double q[2] = {g.x.lo + static_cast<double>(i) * h, g.y.lo + static_cast<double>(j) * h};
            if (d.interior(q)) {
                m.index[j * nx + i] = static_cast<std::int64_t>(m.unknowns++);
            }
        }
    }
    if (m.unknowns == 0) {
        throw InvalidArgument("grid has no interior points");
    }
    return m;
}

bool mask_connected(const MaskedGrid &m) {
    const std::size_t nx = m.grid.nx(), ny = m.grid.ny();
    std::vector<char> seen(m.index.size(), 0);
    std::vector<std::size_t> stack;
    std::size_t start = 0;
    while (start < m.index.size() && m.index[start] < 0) {
        ++start;
    }
    if (start == m.index.size()) {
        return false;
    }
    stack.push_back(start);
    seen[start] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
        const std::size_t k = stack.back();
        stack.pop_back();
        ++reached;
        const std::size_t i = k % nx, j = k / nx;
        const std::size_t nb[4] = {i > 0 ? k - 1 : k, i + 1 < nx ? k + 1 : k, j > 0 ? k - nx : k,
                                   j + 1 < ny ? k + nx : k};
        for (std::size_t n : nb) {
            if (n != k && !seen[n] && m.index[n] >= 0) {
                seen[n] = 1;
                stack.push_back(n);
            }
        }
    }
    return reached == m.unknowns;
}

namespace {

// Matrix-free -(1/2) five-point Laplacian on the unknowns; neighbour slot
// `unknowns` points at a permanent zero.
class MaskedOperator {
  public:
    explicit MaskedOperator(const MaskedGrid &m) : n_(m.unknowns) {
        const std::size_t nx = m.grid.nx(), ny = m.grid.ny();
        const double h = m.grid.spacing();
        c_ = 0.5 / (h * h);
        nb_.assign(4 * n_, static_cast<std::uint32_t>(n_));
        for (std::size_t j = 0; j < ny; ++j) {
            for (std::size_t i = 0; i < nx; ++i) {
                const std::int64_t k = m.index[j * nx + i];
                if (k < 0) {
                    continue;
                }
                auto at = [&](std::size_t ii, std::size_t jj) {
                    const std::int64_t v = m.index[jj * nx + ii];
                    return v < 0 ? static_cast<std::uint32_t>(n_) : static_cast<std::uint32_t>(v);
                };
                const std::size_t b = 4 * static_cast<std::size_t>(k);
                if (i > 0) {
                    nb_[b] = at(i - 1, j);
                }
                if (i + 1 < nx) {
                    nb_[b + 1] = at(i + 1, j);
                }
                if (j > 0) {
                    nb_[b + 2] = at(i, j - 1);
                }
                if (j + 1 < ny) {
                    nb_[b + 3] = at(i, j + 1);
                }
            }
        }
    }

    std::size_t size() const { return n_; }

    // y = (A - sigma) x; x must have size n + 1 with x[n] == 0.
    void apply(const std::vector<double> &x, std::vector<double> &y, double sigma) const {
        const double diag = 4.0 * c_ - sigma;
        const std::uint32_t *nb = nb_.data();
        for (std::size_t k = 0; k < n_; ++k, nb += 4) {
            y[k] = diag * x[k] - c_ * (x[nb[0]] + x[nb[1]] + x[nb[2]] + x[nb[3]]);
        }
    }

  private:
    std::size_t n_;
    double c_ = 0.0;
    std::vector<std::uint32_t> nb_;
};

double dot(const std::vector<double> &a, const std::vector<double> &b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += a[i] * b[i];
    }
    return s;
}

enum class SolveStatus { converged, indefinite, exhausted };

// CG on (A - sigma) y = b from the given y until |r| <= target.
SolveStatus conjugate_gradient(const MaskedOperator &A, double sigma, const std::vector<double> &b,
                               std::vector<double> &y, double target, std::size_t max_iter) {
    const std::size_t n = A.size();
    std::vector<double> r(n + 1, 0.0), p(n + 1, 0.0), ap(n + 1, 0.0);
    A.apply(y, ap, sigma);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = b[i] - ap[i];
        p[i] = r[i];
    }
    double rr = dot(r, r, n);
    for (std::size_t it = 0; it < max_iter; ++it) {
        if (std::sqrt(rr) <= target) {
            return SolveStatus::converged;
        }
        A.apply(p, ap, sigma);
        const double pap = dot(p, ap, n);
        if (!(pap > 0.0)) {
            return SolveStatus::indefinite;
        }
        const double alpha = rr / pap;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double rr_new = dot(r, r, n);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = r[i] + beta * p[i];
        }
    }
    return std::sqrt(rr) <= target ? SolveStatus::converged : SolveStatus::exhausted;
}

void normalize(std::vector<double> &x, std::size_t n) {
    const double s = std::sqrt(dot(x, x, n));
    for (std::size_t i = 0; i < n; ++i) {
        x[i] /= s;
    }
}

} // namespace

double dirichlet_grid_eigenvalue(const MaskedGrid &m, const Oracle2DOptions &opt, std::vector<double> *eigenvector,
                                 const std::vector<double> *start) {
    const MaskedOperator A(m);
    const std::size_t n = A.size();
    std::vector<double> x(n + 1, 1.0), ax(n + 1, 0.0), y(n + 1, 0.0);
    x[n] = 0.0;
    if (start != nullptr) {
        if (start->size() != n) {
            throw InvalidArgument("start vector does not match the grid");
        }
        std::copy(start->begin(), start->end(), x.begin());
    }
    normalize(x, n);
    A.apply(x, ax, 0.0);
    double rho = dot(x, ax, n);
    double sigma = 0.0;
    bool shifted = false;

    for (std::size_t outer = 0; outer < opt.max_outer; ++outer) {
        double res2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ax[i] - rho * x[i];
            res2 += r * r;
        }
        const double res = std::sqrt(res2);
        if (res <= opt.tolerance * rho) {
            if (eigenvector != nullptr) {
                eigenvector->assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
            }
            return rho;
        }
        // Inexact solve: the warm start x/(rho - sigma) leaves a residual of
        // size res/(rho - sigma); one decade of reduction per outer step keeps
        // the convergence rate of exact inverse iteration.
        SolveStatus status;
        for (;;) {
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = x[i] / (rho - sigma);
            }
            y[n] = 0.0;
            status = conjugate_gradient(A, sigma, x, y, 0.1 * res / (rho - sigma), opt.max_inner);
            if (status != SolveStatus::indefinite) {
                break;
            }
            // The shift passed the lowest eigenvalue: back off.
            sigma -= (rho - sigma);
        }
        if (status == SolveStatus::exhausted) {
            throw NumericalFailure("conjugate-gradient iteration budget exhausted (" + std::to_string(opt.max_inner) +
                                   " iterations)");
        }
        std::copy(y.begin(), y.end(), x.begin());
        x[n] = 0.0;
        normalize(x, n);
        A.apply(x, ax, 0.0);
        const double next = dot(x, ax, n);
        if (!shifted && std::abs(next - rho) < 1e-3 * next) {
            sigma = 0.85 * next;
            shifted = true;
        }
        rho = next;
    }
    throw NumericalFailure("inverse iteration did not converge in " + std::to_string(opt.max_outer) + " steps");
}

namespace {

// Bilinear interpolation of a coarse-grid vector onto the fine mask.
std::vector<double> prolong(const MaskedGrid &coarse, const std::vector<double> &v, const MaskedGrid &fine) {
    const std::size_t cnx = coarse.grid.nx(), cny = coarse.grid.ny();
    const double hc = coarse.grid.spacing(), hf = fine.grid.spacing();
    const std::size_t fnx = fine.grid.nx(), fny = fine.grid.ny();
    auto cv = [&](std::size_t i, std::size_t j) {
        if (i >= cnx || j >= cny) {
            return 0.0;
        }
        const std::int64_t k = coarse.index[j * cnx + i];
        return k < 0 ? 0.0 : v[static_cast<std::size_t>(k)];
    };
    std::vector<double> out(fine.unknowns, 0.0);
    for (std::size_t j = 0; j < fny; ++j) {
        for (std::size_t i = 0; i < fnx; ++i) {
            const std::int64_t k = fine.index[j * fnx + i];
            if (k < 0) {
                continue;
            }
            const double x = (fine.grid.x.lo + static_cast<double>(i) * hf - coarse.grid.x.lo) / hc;
            const double y = (fine.grid.y.lo + static_cast<double>(j) * hf - coarse.grid.y.lo) / hc;
            const double fx = std::floor(x), fy = std::floor(y);
            const auto ix = static_cast<std::size_t>(std::max(0.0, fx));
            const auto iy = static_cast<std::size_t>(std::max(0.0, fy));
            const double tx = x - fx, ty = y - fy;
            double val = (1 - tx) * (1 - ty) * cv(ix, iy) + tx * (1 - ty) * cv(ix + 1, iy) +
                         (1 - tx) * ty * cv(ix, iy + 1) + tx * ty * cv(ix + 1, iy + 1);
            out[static_cast<std::size_t>(k)] = val > 0.0 ? val : 1e-3;
        }
    }
    return out;
}

std::vector<double> constraint_start(const Domain &d, const MaskedGrid &m) {
    const std::size_t nx = m.grid.nx(), ny = m.grid.ny();
    const double h = m.grid.spacing();
    std::vector<double> s(m.unknowns, 0.0);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::int64_t k = m.index[j * nx + i];
            if (k >= 0) {
                const double q[2] = {m.grid.x.lo + static_cast<double>(i) * h, m.grid.y.lo + static_cast<double>(j) * h};
                s[static_cast<std::size_t>(k)] = -d.constraint(q);
            }
        }
    }
    return s;
}

} // namespace

OracleEstimate solve_2d_dirichlet_ground_state(const Domain &d, const Grid2D &g, const Oracle2DOptions &opt) {
    const MaskedGrid coarse = build_mask(d, g);
    if (!mask_connected(coarse)) {
        throw InvalidArgument("domain mask is not connected at this resolution");
    }
    Grid2D gf = g;
    gf.n = 2 * g.n;
    const MaskedGrid fine = build_mask(d, gf);

    std::vector<double> v;
    const std::vector<double> s0 = constraint_start(d, coarse);
    const double e_c = dirichlet_grid_eigenvalue(coarse, opt, &v, &s0);
    const std::vector<double> s1 = prolong(coarse, v, fine);
    const double e_f = dirichlet_grid_eigenvalue(fine, opt, nullptr, &s1);

    const double hc = coarse.grid.spacing(), hf = fine.grid.spacing();
    OracleEstimate est;
    est.coarse = e_c;
    est.fine = e_f;
    est.coarse_n = g.n;
    est.fine_n = gf.n;
    est.value = e_f + (e_f - e_c) * hf / (hc - hf);
    est.error_bar = std::abs(est.value - e_f);
    est.x_range = g.x;
    return est;
}

} // namespace groundbound
