#pragma once

#include <functional>
#include <string>
#include <vector>

#include "glnm/eigensolve.hpp"

namespace glnm {

/// Linear-mixing fixed-point configuration. mixing is the fraction of the
/// freshly computed fields; 0.5 is plain averaging of two successive
/// iterations.
struct ScfConfig {
    double mixing = 0.5;
    int max_iterations = 100;
    double tolerance_e = 1e-10;
    double tolerance_field = 1e-10;
    unsigned max_threads = 0; // cap for the per-state solves; 0 = auto
};

/// Shared mass fields plus one potential per state.
struct ScfFields {
    std::vector<double> m;
    std::vector<double> m_prime;
    std::vector<std::vector<double>> V;
};

struct ScfState {
    std::vector<EigenSolution> solutions;
    ScfFields fields;
    int iteration = 0;
    struct HistoryEntry {
        double delta_e;
        double delta_field;
        std::vector<double> e; // per-state eigenvalues of this iteration
    };
    std::vector<HistoryEntry> history; // one entry per completed iteration
    bool converged = false;
    std::string diagnostic; // set when max_iterations is exceeded
};

/// Produces candidate fields from the current solutions. Must be a pure
/// function of the supplied state.
using ScfUpdate = std::function<ScfFields(const ScfState&)>;

/// Fixed-point loop: solve every state with the current fields, ask the
/// update map for candidate fields, mix with the configured fraction, stop
/// when both the eigenvalue change and the max-norm field change fall below
/// tolerance. Initial fields come from the problem templates (m/m' from the
/// first one). Energy windows are warm-started around the previous
/// eigenvalues with halving widths, floored at 100x tolerance_e.
ScfState scf_iterate(std::vector<EigenProblem> problems, const ScfUpdate& update,
                     const ScfConfig& config);

} // namespace glnm
