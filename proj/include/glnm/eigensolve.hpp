#pragma once

#include <functional>
#include <span>

#include "glnm/problem.hpp"
#include "glnm/propagate.hpp"

namespace glnm {

/// Shooting eigenproblem for the effective-mass equation. The trial energy
/// enters only through f = 2 m (e - V); m, m_prime and V are fixed samples.
struct EigenProblem {
    GridPtr grid;
    std::vector<double> m;
    std::vector<double> m_prime;
    std::vector<double> V;
    BoundaryModel boundary;
    int target_nodes = 0;
    double e_lo = 0;
    double e_hi = 0;
    std::function<double(double)> weight; // normalization weight w(x); null means 1
};

struct EigenSolution {
    double e = 0;
    SolutionSamples solution; // normalized y with y_prime attached
    int nodes = 0;
    double match_residual = 0; // |Y_out(m) * Y_in(m+1) - 1| at convergence
    int iterations = 0;        // trial-energy evaluations spent
};

struct MismatchResult {
    double residual = 0; // D(e) = Y_out(m) * Y_in(m+1) - 1
    int nodes = 0;       // outward sign changes up to m plus inward ones beyond
    std::size_t match_index = 0;
};

/// Outermost classical turning point: the largest node with f >= 0 followed
/// by f < 0. Falls back to the grid midpoint when f < 0 everywhere and to
/// three quarters of the grid when f >= 0 everywhere. Throws on grids
/// shorter than 5 nodes.
std::size_t choose_matching_point(const FieldSamples& fields);

/// One trial-energy evaluation: outward and inward sweeps joined at the
/// matching point. A pole landing exactly on the matching pair shifts the
/// point one node inward, at most 5 times.
MismatchResult mismatch(const EigenProblem& problem, double e);

/// Locates the eigenvalue with the requested node count inside the energy
/// window (node-count bisection, then bisection-safeguarded secant on the
/// matching residual), reconstructs the solution from both sweeps anchored
/// at the matching point, and normalizes it to unit weighted norm.
EigenSolution solve(const EigenProblem& problem);

/// Composite Simpson integral of sampled values, applied per uniform grid
/// segment (trapezoid patch when a segment has an odd interval count).
double composite_simpson(const Grid& grid, std::span<const double> values);

} // namespace glnm
