//! @file polynomial.hpp
//! @brief Dense multivariate polynomials with exact term bookkeeping, and the
//! polynomial construction of bounded billiard local energies.

#pragma once

#include "groundbound/core.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace groundbound {

class MultivariatePolynomial {
  public:
    using Exponent = std::vector<unsigned>;

    explicit MultivariatePolynomial(std::size_t dimension = 1);

    static MultivariatePolynomial constant(std::size_t dimension, double c);
    //! The coordinate x_i.
    static MultivariatePolynomial variable(std::size_t dimension, std::size_t i);

    std::size_t dimension() const { return dim_; }
    //! Total degree; -1 for the zero polynomial.
    int degree() const;
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent &e, double c);
    double coefficient(const Exponent &e) const;
    const std::map<Exponent, double> &terms() const { return terms_; }

    MultivariatePolynomial operator+(const MultivariatePolynomial &o) const;
    MultivariatePolynomial operator-(const MultivariatePolynomial &o) const;
    MultivariatePolynomial operator*(const MultivariatePolynomial &o) const;
    MultivariatePolynomial operator*(double s) const;

    MultivariatePolynomial derivative(std::size_t i) const;
    MultivariatePolynomial laplacian() const;
    double operator()(std::span<const double> q) const;

    //! max |a_e - b_e| over the union of supports.
    double max_coefficient_difference(const MultivariatePolynomial &o) const;

  private:
    void check(const MultivariatePolynomial &o) const;

    std::size_t dim_;
    std::map<Exponent, double> terms_;
};

//! All exponent tuples in `dimension` variables of total degree <= degree,
//! in graded lexicographic order.
std::vector<MultivariatePolynomial::Exponent> monomials_up_to(std::size_t dimension, int degree);

struct BartaPair {
    MultivariatePolynomial f;
    MultivariatePolynomial g;
    //! max coefficient of Delta(f b) - g b with f scaled to max |coeff| = 1.
    double residual = 0.0;
};

struct BartaOutcome {
    std::optional<BartaPair> solution;
    std::string diagnostic;
};

//! Finds polynomials f (degree <= n) and g (degree <= n-2) with
//! Delta(f b) = g b and f of one sign on the interior {b < 0}, checked on an
//! interior sample grid over `sample_box`. The local energy of phi = f b
//! under H = -Delta/2 is then -g/(2f), bounded on the closure.
//! Returns no solution (with a diagnostic) when the null space contains no
//! interior-nonvanishing f at this degree; callers raise n.
BartaOutcome barta_polynomial_construction(const MultivariatePolynomial &b, int n, const std::vector<Interval> &sample_box,
                                           std::size_t samples_per_axis = 101);

//! Field of phi = f b with the closed form -g/(2f) as primary representation
//! and the ratio (-Delta(fb)/2)/(fb) as a second one.
LocalEnergyField barta_local_energy_field(const MultivariatePolynomial &b, const BartaPair &pair,
                                          std::vector<Interval> box);

} // namespace groundbound
