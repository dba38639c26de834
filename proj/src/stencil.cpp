#include "glnm/stencil.hpp"

#include <cmath>
#include <string>

#include "glnm/error.hpp"

namespace glnm {

namespace {

// g-only pieces shared by the recurrence and the cache. The symmetric sums
// and products are formed once so that the reflection map
// (g+,f+) <-> (g-,f-), g -> -g swaps T+ <-> T- bit-for-bit.
struct GParts {
    double a, b0, bp, bm, c;
    double mid; // (h/24)(10 c g0 + g+ + g-)
};

GParts g_parts(double h, double gm, double g0, double gp)
{
    const double gsum = gp + gm;
    const double gprod = gp * gm;
    GParts p;
    p.a = (1.0 + h / 3.0 * gp) * (1.0 - h / 3.0 * gm) + h * h / 18.0 * g0 * gsum;
    p.b0 = (1.0 + 4.0 * h / 15.0 * gp) * (1.0 - 4.0 * h / 15.0 * gm) + (h / 15.0) * (h / 15.0) * gprod;
    p.bp = (1.0 + 5.0 * h / 6.0 * g0) * (1.0 - h / 3.0 * gm) + (h / 3.0) * (h / 3.0) * g0 * gm;
    p.bm = (1.0 - 5.0 * h / 6.0 * g0) * (1.0 + h / 3.0 * gp) + (h / 3.0) * (h / 3.0) * g0 * gp;
    p.c = (1.0 + 7.0 * h / 20.0 * gp) * (1.0 - 7.0 * h / 20.0 * gm) + (3.0 * h / 20.0) * (3.0 * h / 20.0) * gprod;
    p.mid = (h / 24.0) * (10.0 * p.c * g0 + gsum);
    return p;
}

StencilCache::Row make_row(double h, const GParts& p)
{
    StencilCache::Row r;
    r.A0 = 2.0 * p.a;
    r.B0 = (5.0 * h * h / 6.0) * p.b0;
    r.Ap = p.a + p.mid;
    r.Bp = (h * h / 12.0) * p.bp;
    r.Am = p.a - p.mid;
    r.Bm = (h * h / 12.0) * p.bm;
    return r;
}

} // namespace

StencilCoefficients recurrence_coefficients(const LocalFields& lf)
{
    const GParts p = g_parts(lf.h, lf.g_minus, lf.g_zero, lf.g_plus);
    const StencilCache::Row r = make_row(lf.h, p);
    const StencilCache::Weights w = StencilCache::combine(r, lf.f_minus, lf.f_zero, lf.f_plus);
    StencilCoefficients out;
    out.T0 = w.T0;
    out.T_plus = w.Tp;
    out.T_minus = w.Tm;
    out.a = p.a;
    out.b0 = p.b0;
    out.b_plus = p.bp;
    out.b_minus = p.bm;
    out.c = p.c;
    return out;
}

DerivativeStencil derivative_coefficients(const LocalFields& lf)
{
    const double h = lf.h;
    const double gp = lf.g_plus, g0 = lf.g_zero, gm = lf.g_minus;
    const double gsum = gp + gm;
    const double gprod = gp * gm;

    DerivativeStencil out;
    out.a = (1.0 + h / 3.0 * gp) * (1.0 - h / 3.0 * gm) + h * h / 18.0 * g0 * gsum;
    if (std::abs(out.a) < 1e-12)
        throw solver_error("singular derivative stencil: |a| = " + std::to_string(std::abs(out.a)) +
                           " (step too large for the given g)");

    const double common = (1.0 + 5.0 * h / 12.0 * gp) * (1.0 - 5.0 * h / 12.0 * gm) +
                          (h / 12.0) * (h / 12.0) * gprod;
    out.S0 = (h * h * h / 9.0) * gsum * lf.f_zero;
    out.S_plus = common + (h * h / 6.0) * (1.0 - h / 3.0 * gm) * lf.f_plus;
    out.S_minus = common + (h * h / 6.0) * (1.0 + h / 3.0 * gp) * lf.f_minus;
    return out;
}

StencilCache::StencilCache(const Grid& grid, const std::vector<double>& g)
{
    if (g.size() != grid.size())
        throw validation_error("g samples do not match the grid length");
    rows_.resize(grid.size());
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const Grid::Triple t = grid.triple_at(i);
        rows_[i] = make_row(t.h, g_parts(t.h, g[t.minus], g[i], g[t.plus]));
    }
}

} // namespace glnm
