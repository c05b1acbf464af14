//! @file refine.hpp
//! @brief Raising a one-dimensional lower bound by adding Gaussian bumps
//! s exp(-(q - a)^2 / sigma^2) to S, one amplitude at a time.
//!
//! A step is committed only when it raises inf E_loc, so the bound history is
//! non-decreasing. For even systems the state mirrors every bump at -a with
//! the same amplitude: a one-sided bump cannot lift two symmetric minima.

#pragma once

#include "groundbound/core.hpp"
#include "groundbound/search.hpp"

#include <optional>
#include <vector>

namespace groundbound {

struct GaussianBump {
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;

    double value(double q) const;
    double first(double q) const;
    double second(double q) const;
};

struct BoundRecord {
    std::size_t step = 0;
    std::optional<double> center; //!< empty for the base row
    double amplitude = 0.0;
    double lower = 0.0;
};

struct RefinementState {
    TrialSystem base;
    bool mirror = false;
    std::vector<GaussianBump> bumps;
    double current_lower = 0.0;
    Point argmin;
    std::vector<BoundRecord> bound_history;
};

//! Evaluates the base bound. Requires a 1D system and a finite bound.
RefinementState initial_state(TrialSystem base, bool mirror, const SearchConfig &cfg);

//! Bumps including mirror images (none for a = 0).
std::vector<GaussianBump> effective_bumps(const RefinementState &state);

//! S = S0 + sum of bumps, derivatives assembled analytically.
LogTrialFunction perturbed_trial(const RefinementState &state);
LocalEnergyField perturbed_field(const RefinementState &state);
//! Field of the state with one extra (mirrored if applicable) bump.
LocalEnergyField perturbed_field(const RefinementState &state, const GaussianBump &extra);

enum class CensorVerdict { accept, clip, reject };

struct CensorDecision {
    CensorVerdict verdict = CensorVerdict::accept;
    //! Amplitude to commit (the clipped one for `clip`, 0 for `reject`).
    double amplitude = 0.0;
    double lower = 0.0;
    Point argmin;
};

//! Bound not lowered -> accept. Bound lowered with the argmin moving more than
//! 3 sigma (mirror images identified) -> reject. Otherwise halve s until the
//! bound is no longer lowered -> clip (reject if that takes over 40 halvings).
CensorDecision censor_guard(const RefinementState &state, const GaussianBump &candidate, const SearchConfig &cfg);

struct AmplitudeResult {
    double amplitude = 0.0;
    RefinementState state;
    CensorVerdict verdict = CensorVerdict::accept;
};

//! Maximizes inf E_loc over s in s_range: 81-point scan (s = 0 always
//! included), golden section to 1e-4 in the best bracket, then censor_guard.
//! Commits only a strict improvement; otherwise returns s = 0 and the state
//! with only a history row appended. s_range = [0, 0] returns the state as is.
AmplitudeResult optimize_bump_amplitude(const RefinementState &state, double center, double sigma, Interval s_range,
                                        const SearchConfig &cfg);

//! optimize_bump_amplitude over `centers` in order.
RefinementState refine_schedule(TrialSystem base, const std::vector<double> &centers, double sigma,
                                const SearchConfig &cfg, bool mirror = true, Interval s_range = {-2.0, 2.0});

//! Centers 0, 0.5, ..., 4.0.
std::vector<double> default_quartic_centers();

//! Search settings for refinement: a fine 1D grid over the system box.
SearchConfig refine_search_config(unsigned long long seed = 0);

} // namespace groundbound
