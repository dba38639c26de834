#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>

#include "glnm/eigensolve.hpp"
#include "glnm/problem.hpp"
#include "glnm/propagate.hpp"

namespace glnm {

/// Classic fourth-order Runge-Kutta on the first-order system
/// (y, y')' = (y', -g y' - f y). Needs g and f between the grid points, which
/// is why it takes callables rather than samples. Returns y and y' at
/// x0 + k*step.
SolutionSamples rk4_integrate(const std::function<double(double)>& g,
                              const std::function<double(double)>& f, double y0, double y0_prime,
                              double x0, double x1, double step);

/// Ordinary Numerov recurrence (g == 0 problems only), written from the
/// textbook weights 2 - 5h^2 f0/6 and 1 + h^2 f/12 independently of the
/// generalized stencil. Range semantics mirror step_recurrence.
SolutionSamples numerov_classic(const FieldSamples& fields, std::array<double, 2> y_start,
                                std::size_t first, std::size_t last);

/// Power-series J0 and J1 (30 terms, |x| <= 12). Provenance oracle for every
/// Bessel expected value in the tests.
double bessel_j0_series(double x);
double bessel_j1_series(double x);

using Params = std::map<std::string, double>;

/// A named test problem: its default grid, its ODE form (when the fields do
/// not depend on a trial energy) with the analytic solution, and/or its
/// eigenproblem form with the analytic spectrum.
struct BuiltinProblem {
    std::string name;
    GridSpec default_grid;

    // ODE form (propagation): empty when the problem is eigen-only
    std::function<double(double)> g;
    std::function<double(double)> f;
    std::function<double(double)> exact_solution;

    // eigen form
    bool has_eigenproblem = false;
    std::function<double(double)> m_fn, m_prime_fn, V_fn;
    std::function<BoundaryModel(const Grid&)> boundary_fn;
    std::function<double(double)> weight;
    std::function<double(int)> exact_eigenvalue; // by node count; null when fixture-based
    double window_lo = 0, window_hi = 0;

    bool has_ode_form() const { return static_cast<bool>(f); }
    FieldSamples make_fields(GridPtr grid) const;
    /// Exact solution values at the first two nodes, for seeding a march.
    std::array<double, 2> start_values(const Grid& grid) const;
    EigenProblem make_eigen(GridPtr grid, int target_nodes) const;
};

/// Looks up one of {manufactured_exp, bessel_j0, hydrogen_R, harmonic_R,
/// effective_mass_gauss, box} with optional parameter overrides
/// (box: L; effective_mass_gauss: beta). Throws validation_error for unknown
/// names or parameters.
BuiltinProblem builtin_problem(const std::string& name, const Params& params = {});

} // namespace glnm
