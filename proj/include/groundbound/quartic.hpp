//! @file quartic.hpp
//! @brief One-dimensional quartic oscillator V = r^2 q^2 (q^2 + eta delta^2) / 2
//! with a smooth WKB-like trial S0.

#pragma once

#include "groundbound/core.hpp"

namespace groundbound {

class QuarticOscillator {
  public:
    //! Requires r > 0, eta = +-1 and delta2 > 0 (at delta2 = 0 the log term
    //! of S0 is singular at the origin).
    QuarticOscillator(double r, int eta, double delta2);

    double r() const { return r_; }
    int eta() const { return eta_; }
    double delta2() const { return d2_; }

    double potential(double q) const;
    //! min_q V: -r^2 delta^4 / 8 for eta = -1, 0 for eta = +1.
    double potential_minimum() const;

    //! With u = q^2 + delta^2:
    //! S0 = -r u^{3/2}/3 + r delta^2 (1 - eta) u^{1/2}/2 - ln(u)/2 - r delta^4 u^{-1/2}/2.
    double s0(double q) const;
    double s0_prime(double q) const;
    double s0_second(double q) const;

    //! lim_{|q| -> inf} E_loc = r^2 delta^4 (1 + eta)^2 / 8.
    double asymptotic_local_energy() const;
    //! Half-width of the search box; wide enough to contain the tail extremum
    //! of E_loc, which sits near (delta^6 r^2 + 2) / (1.5 delta^2 r).
    double box_half_width() const;
    //! Smallest q* with S0(q) <= -|q| for all |q| >= q*.
    double normalizability_radius() const;

  private:
    double r_;
    int eta_;
    double d2_;
};

//! H = -(1/2) d^2/dq^2 + V on the line with the S0 trial.
TrialSystem quartic_system(const QuarticOscillator &qo);

} // namespace groundbound
