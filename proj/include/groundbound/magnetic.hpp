//! @file magnetic.hpp
//! @brief Hydrogen in a uniform magnetic field B along z, ground-state
//! sector (L_z = 0), in cylindrical coordinates (rho, z) with z >= 0.
//!
//! H = -Delta/2 + B^2 rho^2 / 8 - 1/r. The trials are even in z and are
//! evaluated at |z|.

#pragma once

#include "groundbound/core.hpp"

#include <string>

namespace groundbound {

enum class MagneticVariant {
    lower,    //!< S = -r
    upper,    //!< S = -r - B rho^2 / 4
    improved, //!< S = -r - B rho^2/4 + rho^2 (r - |z|) / (rho^2 + 5 r / sqrt(B))
};

std::string to_string(MagneticVariant v);
//! Throws InvalidArgument on an unknown name.
MagneticVariant magnetic_variant_from_string(const std::string &name);

class MagneticHydrogen {
  public:
    //! Requires B >= 0.
    explicit MagneticHydrogen(double B);

    double field_strength() const { return b_; }
    Hamiltonian hamiltonian() const;
    //! Requires B > 0 for the improved variant.
    LogTrialFunction trial(MagneticVariant v) const;

    //! max of |dS/dr(0, 0+) + 1| and |dS/drho(0, r)| for r in {0.1, 1, 10}.
    double cusp_residual(MagneticVariant v) const;

  private:
    double b_;
};

//! Field over (rho, z) in [0, 30]^2 with the origin declared removable and
//! the per-variant limits at infinity attached. The improved variant also
//! declares the plane z = 0, where |z| puts a positive delta into H phi.
//! Throws NumericalFailure if a cusp condition fails at build time.
LocalEnergyField magnetic_hydrogen_field(const MagneticHydrogen &mh, MagneticVariant v);

} // namespace groundbound
