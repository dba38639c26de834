#pragma once

#include <cstddef>
#include <vector>

#include "glnm/problem.hpp"

namespace glnm {

/// Values of g and f on one uniform stencil triple (x0 - h, x0, x0 + h).
struct LocalFields {
    double h = 0;
    double g_minus = 0, g_zero = 0, g_plus = 0;
    double f_minus = 0, f_zero = 0, f_plus = 0;
};

/// Weights of the three-point recurrence T0 y0 = T+ y+ + T- y-, plus the
/// auxiliary quantities they are assembled from. The dropped remainder is
/// O(h^truncation_order). With g == 0 everywhere a = b0 = b+- = c = 1 and the
/// weights reduce bit-for-bit to the ordinary Numerov ones.
struct StencilCoefficients {
    double T0 = 0, T_plus = 0, T_minus = 0;
    double a = 0, b0 = 0, b_plus = 0, b_minus = 0, c = 0;
    static constexpr int truncation_order = 6;
};

/// Weights of the interior first-derivative formula
/// y'0 = (S+ y+ - S- y- - S0 y0) / (2 a h), remainder O(h^truncation_order).
/// With g == 0 and f == 0 this is the plain central difference (S0=0, S+-=1).
struct DerivativeStencil {
    double S0 = 0, S_plus = 0, S_minus = 0;
    double a = 0;
    static constexpr int truncation_order = 4;
};

/// Recurrence weights at one node. Pure polynomial in (h, g, f): no branches,
/// no divisions. Evaluation order is fixed for bit-reproducibility.
StencilCoefficients recurrence_coefficients(const LocalFields& lf);

/// Derivative weights at one node. Throws solver_error when |a| < 1e-12
/// (step too large for the given g).
DerivativeStencil derivative_coefficients(const LocalFields& lf);

/// Per-node cache of the g-only parts of the weights. Only f depends on the
/// trial energy in an eigenvalue scan (affinely, through the effective-mass
/// map), so the polynomial g-parts are computed once and the f terms are
/// recombined per trial energy. combine() reproduces
/// recurrence_coefficients() bit-for-bit.
class StencilCache {
public:
    struct Row {
        double A0, B0;   // T0 = A0 - B0 f0
        double Ap, Bp;   // T+ = Ap + Bp f+
        double Am, Bm;   // T- = Am + Bm f-
    };

    struct Weights {
        double T0, Tp, Tm;
    };

    /// Builds rows for every interior node of the grid from the g samples.
    StencilCache(const Grid& grid, const std::vector<double>& g);

    const Row& row(std::size_t center) const { return rows_[center]; }

    static Weights combine(const Row& r, double f_minus, double f_zero, double f_plus)
    {
        return {r.A0 - r.B0 * f_zero, r.Ap + r.Bp * f_plus, r.Am + r.Bm * f_minus};
    }

private:
    std::vector<Row> rows_;
};

} // namespace glnm
