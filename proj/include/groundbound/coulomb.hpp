//! @file coulomb.hpp
//! @brief N charged particles in D dimensions with the pair-cusp trial
//! phi = exp(-sum_{i<j} lambda_ij r_ij), in coordinates relative to particle 0.

#pragma once

#include "groundbound/core.hpp"

#include <vector>

namespace groundbound {

struct Particle {
    double mass = 1.0;
    double charge = 0.0;
};

class CoulombSystem {
  public:
    //! Particle 0 is the reference. With `infinite_reference_mass` its mass
    //! entry is ignored and every 1/m_0 term is dropped exactly.
    //! Requires D >= 2, N >= 2 and finite positive masses.
    CoulombSystem(std::size_t space_dimension, std::vector<Particle> particles, bool infinite_reference_mass = false);

    std::size_t particle_count() const { return particles_.size(); }
    std::size_t space_dimension() const { return dim_; }
    //! D (N - 1).
    std::size_t configuration_dimension() const { return dim_ * (particles_.size() - 1); }
    bool infinite_reference_mass() const { return infinite_ref_; }
    const Particle &particle(std::size_t i) const { return particles_.at(i); }

    //! 1/m_i, exactly 0 for an infinitely heavy reference.
    double inverse_mass(std::size_t i) const;
    //! m_i m_j / (m_i + m_j), the finite mass when the other is infinite.
    double reduced_mass(std::size_t i, std::size_t j) const;
    //! -2 m_ij e_i e_j / (D - 1).
    double cusp(std::size_t i, std::size_t j) const;

    //! Kinetic form in relative coordinates: blocks 1/(2 m_0i) on the
    //! diagonal, 1/(2 m_0) off it. Potential sum_{i<j} e_i e_j / r_ij.
    Hamiltonian hamiltonian() const;
    //! S = -sum_{i<j} lambda_ij r_ij with analytic gradient and Hessian.
    LogTrialFunction trial() const;

  private:
    std::size_t dim_;
    std::vector<Particle> particles_;
    bool infinite_ref_;
};

//! Positions relative to particle 0, flattened as (r_01, r_02, ...).
class ParticleConfiguration {
  public:
    ParticleConfiguration(std::size_t space_dimension, std::vector<double> relative_positions);

    std::size_t particle_count() const { return n_; }
    std::span<const double> coordinates() const { return q_; }
    //! Absolute position with particle 0 at the origin.
    std::vector<double> position(std::size_t i) const;
    double distance(std::size_t i, std::size_t j) const;
    //! cos of the angle at vertex i between particles j and k, from the law of
    //! cosines, clamped to [-1, 1].
    double cos_angle(std::size_t j, std::size_t i, std::size_t k) const;

  private:
    std::size_t dim_;
    std::size_t n_;
    std::vector<double> q_;
};

//! -sum_{i<j} lambda_ij^2/(2 m_ij) - sum_i sum_{j<k; j,k != i} lambda_ij lambda_ik cos(jik)/m_i.
//! Throws SingularEvaluation when two particles coincide.
double coulomb_local_energy(const CoulombSystem &cs, const ParticleConfiguration &pc);

//! Closed form first, log form second. Coalescences are declared with a
//! continuation that evaluates the closed form at a nearby separated
//! configuration. The field depends only on angles, so it is dilation
//! invariant and the unit box suffices.
LocalEnergyField coulomb_local_energy_field(const CoulombSystem &cs);

//! Nucleus of charge Z (infinite mass) with two unit-mass electrons in 3D.
CoulombSystem helium_like(double Z);

//! Analytic (-Z^2 - 1/4, -(Z - 1/2)^2); requires Z >= 1.
BoundsResult helium_bounds(double Z);

} // namespace groundbound
