//! @file core.hpp
//! @brief Domain types and the local-energy evaluation engine.
//!
//! The local energy of a positive trial function phi is (H phi)(q) / phi(q).
//! Its infimum and supremum over the configuration space bracket the
//! ground-state energy, so everything in this library reduces to evaluating
//! that field accurately and locating its global extrema.

#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace groundbound {

//! @defgroup Errors
//! @{

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Parameters violate a documented constraint of the type being built.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

//! Evaluation requested at a declared singular point that has no usable limit.
class SingularEvaluation : public Error {
  public:
    using Error::Error;
};

//! Non-finite arithmetic, solver breakdown, exhausted iteration budget.
class NumericalFailure : public Error {
  public:
    using Error::Error;
};

//! @}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

//! Closed interval; endpoints may be infinite.
struct Interval {
    double lo = -kInf;
    double hi = kInf;

    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

//! A configuration q in Q.
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    Point(std::initializer_list<double> c) : coords(c) {}

    std::size_t size() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
    double &operator[](std::size_t i) { return coords[i]; }
    std::span<const double> span() const { return coords; }
    bool all_finite() const;
};

using ScalarField = std::function<double(std::span<const double>)>;
using VectorField = std::function<std::vector<double>(std::span<const double>)>;

//! Coordinates in which trial derivatives are expressed.
//!
//! The kinetic term is always Cartesian in physical space. For symmetric
//! states we work in reduced coordinates, and the trial must supply the
//! Laplacian in the matching metric:
//!   cartesian    q = (x_1, ..., x_d)
//!   cylindrical  q = (rho, z), axially symmetric states in 3D
//!   radial       q = (r), s-states in 3D
enum class CoordinateSystem { cartesian, cylindrical, radial };

//! A set where E_loc cannot be evaluated directly (coalescences, the billiard
//! boundary, the Coulomb origin, ...).
struct SingularSet {
    std::string name;
    //! Distance (or a first-order proxy) from q to the set.
    ScalarField distance;
    //! Infimum/supremum of the limiting values of E_loc on approach; these
    //! compete with interior extrema. May be +-inf.
    std::optional<double> inf_limit;
    std::optional<double> sup_limit;
    //! Value used for points inside the tube when the singularity is
    //! removable. Empty means such points are skipped.
    ScalarField continuation;
};

//! Configuration space Q.
struct Domain {
    std::size_t dimension = 0;
    CoordinateSystem coordinates = CoordinateSystem::cartesian;
    //! Interior is {constraint(q) < 0}. Empty for unbounded domains.
    ScalarField constraint;
    //! Natural coordinate ranges (rho >= 0, ...). Empty means all of R^d.
    std::vector<Interval> coordinate_ranges;
    std::vector<SingularSet> singular_sets;
    double singular_tube = 1e-6;

    bool bounded() const { return static_cast<bool>(constraint); }
    //! Strict interior and inside the coordinate ranges.
    bool interior(std::span<const double> q) const;
    //! First singular set whose tube contains q, or nullptr.
    const SingularSet *singular_at(std::span<const double> q) const;
    //! Throws InvalidArgument when the description is inconsistent.
    void validate() const;
};

//! Symmetric positive-definite matrix a_ij of H = sum a_ij p_i p_j + V.
class InverseMassForm {
  public:
    InverseMassForm() = default;
    //! Row-major dense matrix; validated symmetric positive-definite.
    InverseMassForm(std::size_t dimension, std::vector<double> row_major);
    static InverseMassForm scalar(std::size_t dimension, double c);

    std::size_t dimension() const { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    //! a = c I.
    bool is_scalar() const { return scalar_; }
    double scalar_value() const { return a_.empty() ? 0.0 : a_[0]; }

  private:
    std::size_t dim_ = 0;
    std::vector<double> a_;
    bool scalar_ = false;
};

struct Hamiltonian {
    InverseMassForm inverse_mass;
    ScalarField potential;
    Domain domain;

    //! Checks dimensions agree and that a curvilinear domain uses a scalar form.
    void validate() const;
};

//! Trial state stored as S = ln(phi), with analytic derivatives.
struct LogTrialFunction {
    std::vector<double> params;
    ScalarField value;
    VectorField gradient;
    //! Laplacian in the metric of the domain's coordinate system.
    ScalarField laplacian;
    //! Row-major Hessian; optional, Cartesian only. Required when the
    //! inverse-mass form is not a multiple of the identity.
    VectorField hessian;
    //! Documented per system; never integrated.
    bool normalizable = true;
    std::string normalizability_note;
};

//! Trial given directly as phi and H phi (needed where phi vanishes on the boundary).
struct RatioTrialFunction {
    ScalarField phi;
    ScalarField h_phi;
};

//! V(q) - sum_ij a_ij (d_i d_j S + d_i S d_j S).
//! Throws NumericalFailure on non-finite results.
double local_energy_log(const Hamiltonian &h, const LogTrialFunction &t, std::span<const double> q);

//! (H phi)(q) / phi(q). Throws SingularEvaluation when phi(q) == 0.
double local_energy_ratio(const RatioTrialFunction &t, std::span<const double> q);

//! Analytic behaviour of E_loc as |q| -> infinity along a family of directions.
struct AsymptoticLimit {
    std::string direction;
    double inf_value = kInf;
    double sup_value = -kInf;
};

enum class AsymptoticControl {
    bounded_domain,
    //! Directional limits listed explicitly.
    limits,
    //! E_loc(t q) = E_loc(q): infinity adds no new values.
    dilation_invariant,
};

struct Asymptotics {
    AsymptoticControl control = AsymptoticControl::bounded_domain;
    std::vector<AsymptoticLimit> limits;
};

//! Evaluable field q -> E_loc(q) with its singularity and asymptotic data.
//!
//! Carries one or more representations of the same field (closed form,
//! log-form, ratio form); the first is the one used for evaluation, the
//! others exist for cross-checking.
class LocalEnergyField {
  public:
    struct Representation {
        std::string name;
        ScalarField eval;
    };

    LocalEnergyField(Domain domain, std::vector<Representation> representations, Asymptotics asymptotics,
                     std::vector<Interval> default_box);

    //! Evaluate with the primary representation, returning the declared
    //! continuation inside singular tubes. Throws SingularEvaluation when q
    //! sits in a tube without continuation.
    double operator()(std::span<const double> q) const;
    //! Evaluate a given representation, no singular-set handling.
    double evaluate(std::size_t representation, std::span<const double> q) const;
    //! True when operator() can produce a value at q.
    bool admissible(std::span<const double> q) const;

    const Domain &domain() const { return domain_; }
    std::size_t dimension() const { return domain_.dimension; }
    const std::vector<Representation> &representations() const { return reps_; }
    const Asymptotics &asymptotics() const { return asymptotics_; }
    const std::vector<Interval> &default_box() const { return default_box_; }

    //! Convenience constructors.
    static Representation log_form(const Hamiltonian &h, LogTrialFunction t);
    static Representation ratio_form(RatioTrialFunction t);

  private:
    Domain domain_;
    std::vector<Representation> reps_;
    Asymptotics asymptotics_;
    std::vector<Interval> default_box_;
};

//! Result of comparing two representations of one field.
//! A Hamiltonian with one log-form trial, the analytic behaviour of E_loc at
//! infinity, and the box that search should cover.
struct TrialSystem {
    Hamiltonian hamiltonian;
    LogTrialFunction trial;
    Asymptotics asymptotics;
    std::vector<Interval> box;

    //! Log-form field over the Hamiltonian's domain.
    LocalEnergyField field() const;
};

struct CrossCheckReport {
    std::size_t samples = 0;
    double max_discrepancy = 0.0;
    Point worst_point;
    bool passed = false;
};

//! Samples n admissible points (uniform in the default box) and compares
//! representation `first` against `second`. Passes iff the max relative
//! discrepancy |a-b|/max(|a|,|b|,1) is <= tolerance.
CrossCheckReport cross_check_field(const LocalEnergyField &f, std::size_t n_samples, unsigned long long seed,
                                   std::size_t first = 0, std::size_t second = 1, double tolerance = 1e-8);

//! @defgroup Search results
//! @{

enum class ExtremumKind { min, max };

//! Where the reported value came from.
enum class ExtremumOrigin { interior, singular_limit, asymptotic_limit };

struct ExtremumReport {
    ExtremumKind kind = ExtremumKind::min;
    Point location;
    double value = 0.0;
    double gradient_norm = 0.0;
    ExtremumOrigin origin = ExtremumOrigin::interior;
    //! Name of the singular set / asymptotic direction that won.
    std::string origin_detail;
    //! Location sits on the search box or a coordinate-range edge.
    bool constrained = false;
    //! Best value after each search level (monotone).
    std::vector<double> history;
    std::size_t evaluations = 0;
};

//! Search resolution under which the extrema were certified.
struct ResolutionCaveat {
    std::size_t grid_points_per_axis = 0;
    std::size_t refinement_levels = 0;
    std::size_t multistart_count = 0;
    double final_step = 0.0;
    std::vector<Interval> box;
};

struct BoundsResult {
    double lower = -kInf;
    double upper = kInf;
    ExtremumReport lower_witness;
    ExtremumReport upper_witness;
    ResolutionCaveat resolution_caveat;
    //! Set for results that are exact formulas rather than searches.
    bool analytic = false;

    bool finite() const;
};

//! @}

} // namespace groundbound
