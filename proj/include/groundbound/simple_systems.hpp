//! @file simple_systems.hpp
//! @brief Exactly solvable reference systems used for calibration.

#pragma once

#include "groundbound/core.hpp"
#include "groundbound/search.hpp"

namespace groundbound {

//! V = q^2/2 with S = -lambda q^2/2. E_loc = lambda/2 + (1 - lambda^2) q^2/2.
TrialSystem harmonic_oscillator(double lambda = 1.0);

//! Radial hydrogen (l = 0): V = -1/r on r > 0 with S = -lambda r and the
//! radial Laplacian S'' + 2S'/r. E_loc = -lambda^2/2 + (lambda - 1)/r, so the
//! origin is removable only at lambda = 1. Requires lambda > 0.
TrialSystem radial_hydrogen(double lambda = 1.0);

//! The same problem in 3D Cartesian coordinates with S = -r (flat E_loc = -1/2).
TrialSystem hydrogen_cartesian();

//! S = -lambda r, lambda in [0.5, 2].
TrialFamily hydrogen_family();
//! S = -lambda q^2/2, lambda in [0.5, 2].
TrialFamily harmonic_family();

} // namespace groundbound
