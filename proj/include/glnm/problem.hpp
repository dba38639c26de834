#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "glnm/grid.hpp"

namespace glnm {

/// Coefficients of y'' + g y' + f y = 0 sampled on a grid. Every solver
/// stage consumes these same values; nothing is ever interpolated between
/// nodes.
struct FieldSamples {
    GridPtr grid;
    std::vector<double> g;
    std::vector<double> f;
};

/// Effective-mass radial model: z'' - (m'/m) z' + 2 m (e - V) z = 0.
/// m_prime is supplied by the caller (it is data, not a numerical
/// derivative), so the first-derivative coefficient -m'/m can encode any g.
struct EffectiveMassModel {
    std::vector<double> m;
    std::vector<double> m_prime;
    std::vector<double> V;
    double e = 0;
};

/// Origin rule: regular solution ~ x^s near the origin.
struct PowerLawOrigin {
    double exponent = 0;
};

/// Origin rule: user-tabulated values at the two innermost nodes.
struct TwoPointOrigin {
    double y0 = 0;
    double y1 = 0;
};

/// Tail rule: exponential decay exp(-kappa h) with kappa = sqrt(max(-f_N, 0)).
struct ExpDecayTail {};

/// Tail rule: user-supplied ratio y_N / y_{N-1} (0 for a hard wall).
struct RatioTail {
    double value = 0;
};

/// Boundary seeds for the ratio sweeps.
struct BoundaryModel {
    std::variant<PowerLawOrigin, TwoPointOrigin> origin = PowerLawOrigin{};
    std::variant<ExpDecayTail, RatioTail> tail = ExpDecayTail{};

    /// Ratio y(x0)/y(x1) at the two innermost nodes.
    double origin_ratio(const Grid& grid) const;
    /// Ratio y(x_N)/y(x_{N-1}) at the outermost node pair.
    double tail_ratio(const FieldSamples& fields) const;
};

/// Pointwise samples of scalar functions; throws validation_error naming the
/// node if either function is non-finite there.
FieldSamples sample_fields(GridPtr grid, const std::function<double(double)>& g,
                           const std::function<double(double)>& f);

/// Maps the effective-mass model onto the generic form:
/// g = -m'/m, f = 2 m (e - V). Requires m > 0 everywhere.
FieldSamples hf_map(GridPtr grid, const EffectiveMassModel& model);

} // namespace glnm
