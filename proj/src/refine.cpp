#include "groundbound/refine.hpp"

#include <algorithm>
#include <cmath>

namespace groundbound {

double GaussianBump::value(double q) const {
    const double t = (q - center) / width;
    return amplitude * std::exp(-t * t);
}

double GaussianBump::first(double q) const { return -2.0 * (q - center) / (width * width) * value(q); }

double GaussianBump::second(double q) const {
    const double w2 = width * width, x = q - center;
    return (4.0 * x * x / (w2 * w2) - 2.0 / w2) * value(q);
}

namespace {

void require_1d(const TrialSystem &base) {
    if (base.hamiltonian.domain.dimension != 1) {
        throw InvalidArgument("refinement needs a one-dimensional system");
    }
}

std::vector<GaussianBump> expand(const std::vector<GaussianBump> &bumps, bool mirror) {
    std::vector<GaussianBump> out;
    for (const auto &b : bumps) {
        out.push_back(b);
        if (mirror && b.center != 0.0) {
            out.push_back({b.amplitude, -b.center, b.width});
        }
    }
    return out;
}

LogTrialFunction assemble(const LogTrialFunction &base, std::vector<GaussianBump> bumps) {
    LogTrialFunction t = base;
    t.value = [v = base.value, bumps](std::span<const double> q) {
        double s = v(q);
        for (const auto &b : bumps) {
            s += b.value(q[0]);
        }
        return s;
    };
    t.gradient = [g = base.gradient, bumps](std::span<const double> q) {
        auto d = g(q);
        for (const auto &b : bumps) {
            d[0] += b.first(q[0]);
        }
        return d;
    };
    t.laplacian = [l = base.laplacian, bumps](std::span<const double> q) {
        double s = l(q);
        for (const auto &b : bumps) {
            s += b.second(q[0]);
        }
        return s;
    };
    if (base.hessian) {
        t.hessian = [l = base.laplacian, bumps](std::span<const double> q) {
            double s = l(q);
            for (const auto &b : bumps) {
                s += b.second(q[0]);
            }
            return std::vector<double>{s};
        };
    }
    for (const auto &b : bumps) {
        t.params.insert(t.params.end(), {b.amplitude, b.center, b.width});
    }
    return t;
}

LocalEnergyField make_field(const TrialSystem &base, std::vector<GaussianBump> bumps) {
    // Bumps vanish with all derivatives at infinity, so the base asymptotics carry over.
    return LocalEnergyField(base.hamiltonian.domain,
                            {LocalEnergyField::log_form(base.hamiltonian, assemble(base.trial, std::move(bumps)))},
                            base.asymptotics, base.box);
}

double argmin_distance(const Point &a, const Point &b, bool mirror) {
    const double direct = std::abs(a[0] - b[0]);
    return mirror ? std::min(direct, std::abs(a[0] + b[0])) : direct;
}

} // namespace

RefinementState initial_state(TrialSystem base, bool mirror, const SearchConfig &cfg) {
    require_1d(base);
    RefinementState st;
    st.base = std::move(base);
    st.mirror = mirror;
    const ExtremumReport m = global_min(st.base.field(), cfg);
    if (!std::isfinite(m.value)) {
        throw InvalidArgument("refinement needs a finite base lower bound");
    }
    st.current_lower = m.value;
    st.argmin = m.location;
    st.bound_history.push_back({0, std::nullopt, 0.0, m.value});
    return st;
}

std::vector<GaussianBump> effective_bumps(const RefinementState &state) { return expand(state.bumps, state.mirror); }

LogTrialFunction perturbed_trial(const RefinementState &state) {
    return assemble(state.base.trial, effective_bumps(state));
}

LocalEnergyField perturbed_field(const RefinementState &state) { return make_field(state.base, effective_bumps(state)); }

LocalEnergyField perturbed_field(const RefinementState &state, const GaussianBump &extra) {
    auto bumps = state.bumps;
    bumps.push_back(extra);
    return make_field(state.base, expand(bumps, state.mirror));
}

CensorDecision censor_guard(const RefinementState &state, const GaussianBump &candidate, const SearchConfig &cfg) {
    if (!(candidate.width > 0.0)) {
        throw InvalidArgument("bump width must be positive");
    }
    const ExtremumReport post = global_min(perturbed_field(state, candidate), cfg);
    CensorDecision d;
    if (post.value >= state.current_lower) {
        d.verdict = CensorVerdict::accept;
        d.amplitude = candidate.amplitude;
        d.lower = post.value;
        d.argmin = post.location;
        return d;
    }
    if (argmin_distance(post.location, state.argmin, state.mirror) > 3.0 * candidate.width) {
        d.verdict = CensorVerdict::reject;
        d.lower = state.current_lower;
        d.argmin = state.argmin;
        return d;
    }
    GaussianBump b = candidate;
    for (int i = 0; i < 40; ++i) {
        b.amplitude *= 0.5;
        const ExtremumReport m = global_min(perturbed_field(state, b), cfg);
        if (m.value >= state.current_lower) {
            d.verdict = CensorVerdict::clip;
            d.amplitude = b.amplitude;
            d.lower = m.value;
            d.argmin = m.location;
            return d;
        }
    }
    d.verdict = CensorVerdict::reject;
    d.lower = state.current_lower;
    d.argmin = state.argmin;
    return d;
}

AmplitudeResult optimize_bump_amplitude(const RefinementState &state, double center, double sigma, Interval s_range,
                                        const SearchConfig &cfg) {
    if (!std::isfinite(state.current_lower)) {
        throw InvalidArgument("refinement needs a finite current lower bound");
    }
    if (!(sigma > 0.0) || !std::isfinite(center)) {
        throw InvalidArgument("bump needs a finite center and positive width");
    }
    if (!(s_range.lo <= s_range.hi) || !std::isfinite(s_range.lo) || !std::isfinite(s_range.hi)) {
        throw InvalidArgument("amplitude range must be finite and ordered");
    }
    AmplitudeResult out{0.0, state, CensorVerdict::accept};
    if (s_range.lo == 0.0 && s_range.hi == 0.0) {
        return out;
    }

    auto objective = [&](double s) {
        if (s == 0.0) {
            return state.current_lower;
        }
        return global_min(perturbed_field(state, GaussianBump{s, center, sigma}), cfg).value;
    };

    const int n_scan = 81;
    std::vector<double> ss, vs;
    for (int i = 0; i < n_scan; ++i) {
        ss.push_back(s_range.lo + s_range.width() * i / (n_scan - 1));
    }
    if (s_range.contains(0.0) && std::find(ss.begin(), ss.end(), 0.0) == ss.end()) {
        ss.insert(std::upper_bound(ss.begin(), ss.end(), 0.0), 0.0);
    }
    for (double s : ss) {
        vs.push_back(objective(s));
    }
    // First maximum wins ties, which keeps the result deterministic.
    const std::size_t k = static_cast<std::size_t>(std::max_element(vs.begin(), vs.end()) - vs.begin());
    double best_s = ss[k], best_v = vs[k];

    double a = ss[k > 0 ? k - 1 : 0], b = ss[std::min(k + 1, ss.size() - 1)];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = objective(c), fd = objective(d);
    while (b - a > 1e-4) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = objective(d);
        }
    }
    for (auto [s, v] : {std::pair{c, fc}, std::pair{d, fd}}) {
        if (v > best_v) {
            best_s = s;
            best_v = v;
        }
    }

    RefinementState next = state;
    BoundRecord row{state.bound_history.empty() ? 1 : state.bound_history.back().step + 1, center, 0.0,
                    state.current_lower};
    if (best_s != 0.0 && best_v > state.current_lower) {
        const CensorDecision cd = censor_guard(state, GaussianBump{best_s, center, sigma}, cfg);
        out.verdict = cd.verdict;
        if (cd.verdict != CensorVerdict::reject && cd.lower > state.current_lower) {
            next.bumps.push_back({cd.amplitude, center, sigma});
            next.current_lower = cd.lower;
            next.argmin = cd.argmin;
            row.amplitude = cd.amplitude;
            row.lower = cd.lower;
            out.amplitude = cd.amplitude;
        }
    }
    next.bound_history.push_back(row);
    out.state = std::move(next);
    return out;
}

RefinementState refine_schedule(TrialSystem base, const std::vector<double> &centers, double sigma,
                                const SearchConfig &cfg, bool mirror, Interval s_range) {
    RefinementState st = initial_state(std::move(base), mirror, cfg);
    for (double a : centers) {
        st = optimize_bump_amplitude(st, a, sigma, s_range, cfg).state;
    }
    return st;
}

std::vector<double> default_quartic_centers() {
    std::vector<double> c;
    for (int i = 0; i <= 8; ++i) {
        c.push_back(0.5 * i);
    }
    return c;
}

SearchConfig refine_search_config(unsigned long long seed) {
    SearchConfig cfg;
    cfg.grid_points_per_axis = 1025;
    cfg.rng_seed = seed;
    return cfg;
}

} // namespace groundbound
