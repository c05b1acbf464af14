//! @file oracle.hpp
//! @brief Finite-difference reference eigenvalues for H = -Delta/2 + V.
//!
//! 1D: three-point stencil, lowest eigenvalue by Sturm-count bisection, two
//! grids (h and h/2) combined by second-order Richardson extrapolation.
//! 2D: five-point stencil on a uniform grid masked by the domain constraint
//! (Dirichlet outside), lowest eigenvalue by shifted inverse iteration with
//! conjugate-gradient solves. The staircase boundary is first order, so the
//! two-grid extrapolation is first order too.

#pragma once

#include "groundbound/core.hpp"

#include <cstdint>
#include <vector>

namespace groundbound {

struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n = 1000;

    double spacing() const;
    //! Throws InvalidArgument unless n >= 100 and x_max > x_min (both finite).
    void validate() const;
};

struct Grid2D {
    Interval x{-1.0, 1.0};
    Interval y{-1.0, 1.0};
    //! Points along the longer side; the spacing is shared by both axes.
    std::size_t n = 400;

    double spacing() const;
    std::size_t nx() const;
    std::size_t ny() const;
    void validate() const;
};

struct OracleEstimate {
    double value = 0.0;
    double error_bar = 0.0;
    double coarse = 0.0; //!< grid eigenvalue at spacing h
    double fine = 0.0;   //!< grid eigenvalue at spacing h/2 (1D) or the fine grid (2D)
    std::size_t coarse_n = 0;
    std::size_t fine_n = 0;
    //! 1D: box enlargements needed for the edge-decay check.
    std::size_t retries = 0;
    //! 1D: max(|psi| at the open edges) / max |psi| on the fine grid.
    double edge_ratio = 0.0;
    //! Final domain actually used.
    Interval x_range;
};

//! Number of eigenvalues of the symmetric tridiagonal matrix below x.
std::size_t sturm_count(std::span<const double> diag, std::span<const double> off, double x);
//! Lowest eigenvalue by bisection to full precision.
double lowest_eigenvalue_tridiagonal(std::span<const double> diag, std::span<const double> off);

struct Oracle1DOptions {
    //! A wall is a physical Dirichlet boundary: exempt from the decay check
    //! and never moved.
    bool left_wall = false;
    bool right_wall = false;
    std::size_t max_retries = 4;
    double enlarge = 1.5;
    double edge_tolerance = 1e-8;
};

//! Matrix of -(1/2) d^2/dx^2 + V on the interior nodes of g.
void tridiagonal_hamiltonian(const ScalarField &V, const Grid1D &g, std::vector<double> &diag,
                             std::vector<double> &off);

//! Fine grid has 2n - 1 points (h/2). Throws NumericalFailure when the
//! eigenfunction does not decay at an open edge after the allowed enlargements.
OracleEstimate solve_1d_ground_state(const ScalarField &V, Grid1D g, const Oracle1DOptions &opt = {});

struct Oracle2DOptions {
    std::size_t max_outer = 500;
    //! Relative eigen-residual |A x - rho x| / rho at convergence.
    double tolerance = 1e-8;
    std::size_t max_inner = 20000;
};

struct MaskedGrid {
    Grid2D grid;
    //! Node index (j * nx + i) -> unknown index, or -1 outside the domain.
    std::vector<std::int64_t> index;
    std::size_t unknowns = 0;
};

MaskedGrid build_mask(const Domain &d, const Grid2D &g);
//! 4-neighbour flood fill over the interior nodes.
bool mask_connected(const MaskedGrid &m);

//! Lowest eigenvalue on one masked grid; optional start vector on the unknowns.
double dirichlet_grid_eigenvalue(const MaskedGrid &m, const Oracle2DOptions &opt, std::vector<double> *eigenvector,
                                 const std::vector<double> *start);

//! Coarse grid g (n) and fine grid 2n per axis, first-order extrapolation in h.
//! Requires a bounded domain with a connected mask.
OracleEstimate solve_2d_dirichlet_ground_state(const Domain &d, const Grid2D &g, const Oracle2DOptions &opt = {});

} // namespace groundbound
