#include "groundbound/search.hpp"

#include "groundbound/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace groundbound {

namespace {

constexpr double kStopStep = 1e-9;
constexpr double kStopChange = 1e-12;
constexpr std::size_t kScanBudget = std::size_t{1} << 21;
constexpr std::size_t kChunks = 64;

struct Candidate {
    std::vector<double> x;
    double v = kInf;
};

// Strict weak order: lower value first, then lexicographically smaller location.
bool better(const Candidate &a, const Candidate &b) {
    if (a.v != b.v) {
        return a.v < b.v;
    }
    return a.x < b.x;
}

std::vector<Interval> resolve_box(const LocalEnergyField &f, const SearchConfig &cfg) {
    std::vector<Interval> box = cfg.box.empty() ? f.default_box() : cfg.box;
    if (box.size() != f.dimension()) {
        throw InvalidArgument("search box must have one interval per dimension");
    }
    const auto &ranges = f.domain().coordinate_ranges;
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (!ranges.empty()) {
            box[i].lo = std::max(box[i].lo, ranges[i].lo);
            box[i].hi = std::min(box[i].hi, ranges[i].hi);
        }
        if (!std::isfinite(box[i].lo) || !std::isfinite(box[i].hi) || !(box[i].lo < box[i].hi)) {
            throw InvalidArgument("empty searchable region");
        }
    }
    return box;
}

std::size_t effective_grid(std::size_t requested, std::size_t dim) {
    const auto cap = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(kScanBudget), 1.0 / static_cast<double>(dim)) + 1e-9));
    return std::max<std::size_t>(8, std::min(requested, cap));
}

class Searcher {
  public:
    Searcher(const LocalEnergyField &f, const SearchConfig &cfg, ExtremumKind kind)
        : f_(f), cfg_(cfg), kind_(kind), sign_(kind == ExtremumKind::min ? 1.0 : -1.0), box_(resolve_box(f, cfg)),
          dim_(f.dimension()), n_(effective_grid(cfg.grid_points_per_axis, dim_)) {}

    ExtremumReport run() {
        ExtremumReport report;
        report.kind = kind_;

        std::vector<double> spacing(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            spacing[i] = box_[i].width() / static_cast<double>(n_ - 1);
        }

        std::vector<Candidate> cands = scan();
        add_random_starts(cands);
        if (cands.empty()) {
            throw InvalidArgument("empty searchable region: no admissible point in the search box");
        }
        report.history.push_back(best_of(cands).v);

        for (std::size_t level = 1; level < cfg_.refinement_levels; ++level) {
            const std::size_t m = dim_ <= 2 ? 9 : (dim_ <= 4 ? 5 : 3);
            for (auto &c : cands) {
                zoom(c, spacing, m);
            }
            for (auto &s : spacing) {
                s *= 2.0 / static_cast<double>(m - 1);
            }
            report.history.push_back(std::min(report.history.back(), best_of(cands).v));
        }

        double final_step = kInf;
        for (auto &c : cands) {
            final_step = std::min(final_step, polish(c, spacing));
        }
        final_step_ = final_step;
        const Candidate best = best_of(cands);
        report.history.push_back(std::min(report.history.back(), best.v));

        report.location = Point(best.x);
        report.value = sign_ * best.v;
        report.origin = ExtremumOrigin::interior;
        report.gradient_norm = gradient_norm(best.x, report.constrained);

        // Declared limits compete with the interior value.
        double winner = best.v;
        for (const auto &s : f_.domain().singular_sets) {
            const auto &lim = kind_ == ExtremumKind::min ? s.inf_limit : s.sup_limit;
            if (lim && sign_ * *lim < winner) {
                winner = sign_ * *lim;
                report.origin = ExtremumOrigin::singular_limit;
                report.origin_detail = s.name;
            }
        }
        if (f_.asymptotics().control == AsymptoticControl::limits) {
            for (const auto &a : f_.asymptotics().limits) {
                const double lim = kind_ == ExtremumKind::min ? a.inf_value : a.sup_value;
                if (sign_ * lim < winner) {
                    winner = sign_ * lim;
                    report.origin = ExtremumOrigin::asymptotic_limit;
                    report.origin_detail = a.direction;
                }
            }
        }
        if (report.origin != ExtremumOrigin::interior) {
            report.value = sign_ * winner;
            report.history.push_back(winner);
        }
        for (auto &h : report.history) {
            h *= sign_;
        }
        report.evaluations = evaluations_;
        return report;
    }

    ResolutionCaveat caveat() const {
        return {n_, cfg_.refinement_levels, cfg_.multistart_count, final_step_, box_};
    }

  private:
    // Signed value, +inf when inadmissible.
    double eval(std::span<const double> x) {
        ++evaluations_;
        if (!f_.admissible(x)) {
            return kInf;
        }
        const double v = f_(x);
        if (std::isnan(v)) {
            throw NumericalFailure("local energy evaluated to NaN");
        }
        return sign_ * v;
    }

    std::vector<double> node(std::size_t index) const {
        std::vector<double> x(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            const std::size_t k = index % n_;
            index /= n_;
            x[i] = k + 1 == n_ ? box_[i].hi : box_[i].lo + box_[i].width() * static_cast<double>(k) / static_cast<double>(n_ - 1);
        }
        return x;
    }

    std::vector<Candidate> scan() {
        std::size_t total = 1;
        for (std::size_t i = 0; i < dim_; ++i) {
            total *= n_;
        }
        std::vector<double> values(total, kInf);
        std::vector<std::size_t> counts(kChunks, 0);
        parallel_for(total, kChunks, [&](std::size_t b, std::size_t e, std::size_t c) {
            for (std::size_t k = b; k < e; ++k) {
                const std::vector<double> x = node(k);
                if (!f_.admissible(x)) {
                    continue;
                }
                const double v = f_(x);
                if (std::isnan(v)) {
                    throw NumericalFailure("local energy evaluated to NaN");
                }
                values[k] = sign_ * v;
            }
            counts[c] += e - b;
        });
        evaluations_ += std::accumulate(counts.begin(), counts.end(), std::size_t{0});

        // Discrete local minima over axis neighbours give one start per basin.
        std::vector<std::size_t> minima, rest;
        std::size_t stride = 1;
        std::vector<std::size_t> strides(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            strides[i] = stride;
            stride *= n_;
        }
        for (std::size_t k = 0; k < total; ++k) {
            if (!std::isfinite(values[k]) && values[k] == kInf) {
                continue;
            }
            bool is_min = true;
            for (std::size_t i = 0; i < dim_ && is_min; ++i) {
                const std::size_t ki = (k / strides[i]) % n_;
                if (ki > 0 && values[k - strides[i]] < values[k]) {
                    is_min = false;
                }
                if (ki + 1 < n_ && values[k + strides[i]] < values[k]) {
                    is_min = false;
                }
            }
            (is_min ? minima : rest).push_back(k);
        }
        auto by_value = [&](std::size_t a, std::size_t b) {
            return values[a] != values[b] ? values[a] < values[b] : a < b;
        };
        const std::size_t want = cfg_.multistart_count;
        std::sort(minima.begin(), minima.end(), by_value);
        if (minima.size() < want) {
            const std::size_t extra = std::min(want - minima.size(), rest.size());
            std::partial_sort(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(extra), rest.end(), by_value);
            minima.insert(minima.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(extra));
        }
        std::vector<Candidate> out;
        for (std::size_t j = 0; j < minima.size() && out.size() < want; ++j) {
            out.push_back({node(minima[j]), values[minima[j]]});
        }
        return out;
    }

    void add_random_starts(std::vector<Candidate> &cands) {
        std::mt19937_64 rng(cfg_.rng_seed);
        std::vector<std::uniform_real_distribution<double>> axes;
        for (const auto &iv : box_) {
            axes.emplace_back(iv.lo, iv.hi);
        }
        std::size_t added = 0;
        for (std::size_t attempt = 0; attempt < 100 * cfg_.multistart_count && added < cfg_.multistart_count; ++attempt) {
            std::vector<double> x(dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                x[i] = axes[i](rng);
            }
            const double v = eval(x);
            if (v == kInf) {
                continue;
            }
            cands.push_back({std::move(x), v});
            ++added;
        }
    }

    static Candidate best_of(const std::vector<Candidate> &cands) {
        return *std::min_element(cands.begin(), cands.end(), better);
    }

    void zoom(Candidate &c, const std::vector<double> &spacing, std::size_t m) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < dim_; ++i) {
            total *= m;
        }
        const Candidate start = c;
        std::vector<double> x(dim_);
        for (std::size_t k = 0; k < total; ++k) {
            std::size_t idx = k;
            for (std::size_t i = 0; i < dim_; ++i) {
                const double t = -1.0 + 2.0 * static_cast<double>(idx % m) / static_cast<double>(m - 1);
                idx /= m;
                x[i] = std::clamp(start.x[i] + t * spacing[i], box_[i].lo, box_[i].hi);
            }
            Candidate trial{x, eval(x)};
            if (better(trial, c)) {
                c = std::move(trial);
            }
        }
    }

    // Coordinate descent with shrinking steps; returns the final step.
    double polish(Candidate &c, std::vector<double> step) {
        double max_step = *std::max_element(step.begin(), step.end());
        for (std::size_t iter = 0; iter < 100000 && max_step >= kStopStep; ++iter) {
            const double before = c.v;
            bool moved = false;
            for (std::size_t i = 0; i < dim_; ++i) {
                for (double dir : {1.0, -1.0}) {
                    std::vector<double> y = c.x;
                    y[i] = std::clamp(y[i] + dir * step[i], box_[i].lo, box_[i].hi);
                    if (y[i] == c.x[i]) {
                        continue;
                    }
                    const double v = eval(y);
                    if (v < c.v) {
                        c.x = std::move(y);
                        c.v = v;
                        moved = true;
                        break;
                    }
                }
            }
            if (!moved) {
                for (auto &s : step) {
                    s *= 0.5;
                }
                max_step *= 0.5;
            } else if (before - c.v < kStopChange * std::max(1.0, std::abs(c.v))) {
                break;
            }
        }
        return max_step;
    }

    // Projected central-difference gradient of the signed field.
    double gradient_norm(const std::vector<double> &x, bool &constrained) {
        constrained = false;
        const double fx = eval(x);
        double sum = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
            if (x[i] - box_[i].lo < h || box_[i].hi - x[i] < h) {
                constrained = true;
            }
            std::vector<double> xp = x, xm = x;
            xp[i] = std::min(x[i] + h, box_[i].hi);
            xm[i] = std::max(x[i] - h, box_[i].lo);
            double fp = xp[i] != x[i] ? eval(xp) : kInf;
            double fm = xm[i] != x[i] ? eval(xm) : kInf;
            double g = 0.0;
            if (fp != kInf && fm != kInf) {
                g = (fp - fm) / (xp[i] - xm[i]);
            } else if (fp != kInf) {
                g = (fp - fx) / (xp[i] - x[i]);
                constrained = true;
                g = std::min(g, 0.0); // an outward-pointing descent direction is blocked
            } else if (fm != kInf) {
                g = (fx - fm) / (x[i] - xm[i]);
                constrained = true;
                g = std::max(g, 0.0);
            } else {
                constrained = true;
            }
            sum += g * g;
        }
        return std::sqrt(sum);
    }

    const LocalEnergyField &f_;
    const SearchConfig &cfg_;
    ExtremumKind kind_;
    double sign_;
    std::vector<Interval> box_;
    std::size_t dim_;
    std::size_t n_;
    std::size_t evaluations_ = 0;
    double final_step_ = 0.0;
};

double objective_of(const LocalEnergyField &f, Objective obj, const SearchConfig &cfg) {
    return obj == Objective::maximize_lower ? global_min(f, cfg).value : global_max(f, cfg).value;
}

} // namespace

void SearchConfig::validate() const {
    if (grid_points_per_axis < 8) {
        throw InvalidArgument("grid_points_per_axis must be >= 8");
    }
    if (refinement_levels < 1) {
        throw InvalidArgument("refinement_levels must be >= 1");
    }
    if (multistart_count < 1) {
        throw InvalidArgument("multistart_count must be >= 1");
    }
    if (!(local_tol > 0.0)) {
        throw InvalidArgument("local_tol must be positive");
    }
}

ExtremumReport global_min(const LocalEnergyField &f, const SearchConfig &cfg) {
    cfg.validate();
    return Searcher(f, cfg, ExtremumKind::min).run();
}

ExtremumReport global_max(const LocalEnergyField &f, const SearchConfig &cfg) {
    cfg.validate();
    return Searcher(f, cfg, ExtremumKind::max).run();
}

BoundsResult bounds(const LocalEnergyField &f, const SearchConfig &cfg) {
    cfg.validate();
    Searcher lo(f, cfg, ExtremumKind::min);
    Searcher hi(f, cfg, ExtremumKind::max);
    BoundsResult r;
    r.lower_witness = lo.run();
    r.upper_witness = hi.run();
    r.lower = r.lower_witness.value;
    r.upper = r.upper_witness.value;
    r.resolution_caveat = lo.caveat();
    r.resolution_caveat.final_step = std::max(lo.caveat().final_step, hi.caveat().final_step);
    return r;
}

BoundsResult bounds(const Hamiltonian &h, const LogTrialFunction &t, const Asymptotics &asymptotics,
                    std::vector<Interval> default_box, const SearchConfig &cfg) {
    LocalEnergyField f(h.domain, {LocalEnergyField::log_form(h, t)}, asymptotics, std::move(default_box));
    return bounds(f, cfg);
}

BoundsResult bounds(const Domain &d, const RatioTrialFunction &t, std::vector<Interval> default_box,
                    const SearchConfig &cfg) {
    LocalEnergyField f(d, {LocalEnergyField::ratio_form(t)}, {}, std::move(default_box));
    return bounds(f, cfg);
}

ParameterOptimum optimize_parameters(const TrialFamily &family, Objective objective, const SearchConfig &cfg) {
    cfg.validate();
    const std::size_t k = family.control_box.size();
    const double sense = objective == Objective::maximize_lower ? 1.0 : -1.0;
    ParameterOptimum out;

    auto probe = [&](const std::vector<double> &lambda) {
        const LocalEnergyField f = family.field(lambda);
        const double v = objective_of(f, objective, cfg);
        out.probes.push_back({lambda, v});
        return sense * v; // larger is better
    };
    auto take_best = [&] {
        std::size_t best = 0;
        for (std::size_t i = 1; i < out.probes.size(); ++i) {
            const double a = sense * out.probes[i].objective, b = sense * out.probes[best].objective;
            if (a > b || (a == b && out.probes[i].lambda < out.probes[best].lambda)) {
                best = i;
            }
        }
        return best;
    };

    if (k == 0) {
        out.lambda = {};
        out.bounds = bounds(family.field({}), cfg);
        out.objective = objective == Objective::maximize_lower ? out.bounds.lower : out.bounds.upper;
        out.probes.push_back({{}, out.objective});
        return out;
    }
    if (k > 4) {
        throw InvalidArgument("control spaces above 4 dimensions are not supported");
    }
    for (const auto &iv : family.control_box) {
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
            throw InvalidArgument("control box must be finite and non-empty");
        }
    }

    // Coarse probe grid, then coordinate descent from the best probes.
    const std::size_t per_axis = 9;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        total *= per_axis;
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<double> lambda(k);
        std::size_t r = idx;
        for (std::size_t i = 0; i < k; ++i) {
            const auto &iv = family.control_box[i];
            lambda[i] = iv.lo + iv.width() * static_cast<double>(r % per_axis) / static_cast<double>(per_axis - 1);
            r /= per_axis;
        }
        probe(lambda);
    }
    std::mt19937_64 rng(cfg.rng_seed);
    for (std::size_t s = 0; s < cfg.multistart_count; ++s) {
        std::vector<double> lambda(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::uniform_real_distribution<double> u(family.control_box[i].lo, family.control_box[i].hi);
            lambda[i] = u(rng);
        }
        probe(lambda);
    }

    std::vector<std::size_t> order(out.probes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sense * out.probes[a].objective > sense * out.probes[b].objective;
    });
    std::vector<std::vector<double>> starts;
    for (std::size_t i = 0; i < order.size() && starts.size() < cfg.multistart_count; ++i) {
        if (std::isfinite(out.probes[order[i]].objective)) {
            starts.push_back(out.probes[order[i]].lambda);
        }
    }
    for (auto x : starts) {
        double fx = sense * objective_of(family.field(x), objective, cfg);
        std::vector<double> step(k);
        for (std::size_t i = 0; i < k; ++i) {
            step[i] = family.control_box[i].width() / static_cast<double>(2 * (per_axis - 1));
        }
        double width = 0.0;
        for (const auto &iv : family.control_box) {
            width = std::max(width, iv.width());
        }
        double max_step = *std::max_element(step.begin(), step.end());
        while (max_step > 1e-9 * std::max(1.0, width)) {
            bool moved = false;
            for (std::size_t i = 0; i < k && !moved; ++i) {
                for (double dir : {1.0, -1.0}) {
                    std::vector<double> y = x;
                    y[i] = std::clamp(y[i] + dir * step[i], family.control_box[i].lo, family.control_box[i].hi);
                    if (y[i] == x[i]) {
                        continue;
                    }
                    const double v = probe(y);
                    if (v > fx) {
                        x = std::move(y);
                        fx = v;
                        moved = true;
                        break;
                    }
                }
            }
            if (!moved) {
                for (auto &s : step) {
                    s *= 0.5;
                }
                max_step *= 0.5;
            }
        }
    }

    const std::size_t best = take_best();
    if (!std::isfinite(out.probes[best].objective)) {
        throw NumericalFailure("objective is infinite for every probed control vector; the family cannot bound E0");
    }
    out.lambda = out.probes[best].lambda;
    out.objective = out.probes[best].objective;
    out.bounds = bounds(family.field(out.lambda), cfg);
    return out;
}

} // namespace groundbound
