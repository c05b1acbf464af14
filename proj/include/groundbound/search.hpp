//! @file search.hpp
//! @brief Global extremum location of a local-energy field and optimization
//! of trial-family control parameters.
//!
//! The search is a grid scan over a box, zoomed refinement around the best
//! grid basins, and a derivative-free coordinate-descent polish. "Global" is
//! certified only up to that resolution; BoundsResult records it.
//! Declared singular-set limits and asymptotic limits compete with the
//! interior result, which is what makes a finite box meaningful for
//! unbounded domains.

#pragma once

#include "groundbound/core.hpp"

#include <functional>
#include <vector>

namespace groundbound {

struct SearchConfig {
    std::size_t grid_points_per_axis = 64;
    std::size_t refinement_levels = 3;
    std::size_t multistart_count = 8;
    //! Gradient-norm tolerance expected at interior critical points.
    double local_tol = 1e-4;
    //! Truncation window; empty means the field's default box.
    std::vector<Interval> box;
    unsigned long long rng_seed = 0;

    //! Throws InvalidArgument unless grid >= 8, levels >= 1, multistarts >= 1.
    void validate() const;
};

ExtremumReport global_min(const LocalEnergyField &f, const SearchConfig &cfg);
ExtremumReport global_max(const LocalEnergyField &f, const SearchConfig &cfg);

//! lower = inf E_loc, upper = sup E_loc. Infinite bounds are reported as such.
BoundsResult bounds(const LocalEnergyField &f, const SearchConfig &cfg);
BoundsResult bounds(const Hamiltonian &h, const LogTrialFunction &t, const Asymptotics &asymptotics,
                    std::vector<Interval> default_box, const SearchConfig &cfg);
BoundsResult bounds(const Domain &d, const RatioTrialFunction &t, std::vector<Interval> default_box,
                    const SearchConfig &cfg);

enum class Objective { maximize_lower, minimize_upper };

//! Trial functions phi_lambda indexed by a control vector in a box of C.
struct TrialFamily {
    std::string name;
    //! Empty for a frozen family.
    std::vector<Interval> control_box;
    std::function<LocalEnergyField(std::span<const double>)> field;
};

struct ParameterProbe {
    std::vector<double> lambda;
    double objective = 0.0;
};

struct ParameterOptimum {
    std::vector<double> lambda;
    double objective = 0.0;
    BoundsResult bounds;
    //! Every control vector evaluated, in evaluation order.
    std::vector<ParameterProbe> probes;
};

//! sup_lambda inf_q E_loc (or inf_lambda sup_q): multistart coordinate
//! descent over the control box with a full extremum search per probe.
//! Throws NumericalFailure when the objective is infinite at every probe.
ParameterOptimum optimize_parameters(const TrialFamily &family, Objective objective, const SearchConfig &cfg);

} // namespace groundbound
