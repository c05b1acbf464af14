//! @file billiard.hpp
//! @brief Dirichlet billiards H = -Delta/2 bounded by polynomial curves.

#pragma once

#include "groundbound/core.hpp"
#include "groundbound/polynomial.hpp"

namespace groundbound {

//! Region between the circles x^2+y^2 = r^2 and (x-delta)^2+y^2 = 1.
class AnnularBilliard {
  public:
    //! Requires 0 < r < 1 and 0 <= delta < 1 - r.
    AnnularBilliard(double inner_radius, double offset);

    double inner_radius() const { return r_; }
    double offset() const { return delta_; }

    //! b(x, y) = [x^2+y^2-r^2][(x-delta)^2+y^2-1]; interior is b < 0.
    MultivariatePolynomial boundary() const;
    //! Bounded domain with the two circles declared singular (phi = b vanishes there).
    Domain domain() const;
    //! Bounding box of the outer disk.
    std::vector<Interval> box() const;
    //! -Delta b / (2 b) = -8[(x-delta/2)^2+y^2-(1+r^2)/4] / b.
    double local_energy(double x, double y) const;

  private:
    double r_;
    double delta_;
};

//! Local energy of phi = b: closed form first, ratio form from polynomial
//! arithmetic second.
LocalEnergyField billiard_local_energy_field(const AnnularBilliard &ab);

//! b = x^2 + y^2 - 1.
MultivariatePolynomial unit_disk_boundary();

//! Field of phi = b (f = 1) for an arbitrary polynomial boundary, ratio form only.
//! `boundary_inf` / `boundary_sup` are the limits of -Delta b/(2b) on approach
//! to b = 0, supplied by the caller.
LocalEnergyField plain_polynomial_billiard_field(const MultivariatePolynomial &b, std::vector<Interval> box,
                                                 double boundary_inf, double boundary_sup);

} // namespace groundbound
